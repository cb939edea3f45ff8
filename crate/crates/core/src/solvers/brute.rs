//! Reference solvers that work on visit sequences directly.

use crate::cost::{Cost, MAX_FINITE};
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Largest `Π (k_i + 1)` the sequence DP accepts.
pub const PSARAFTIS_MAX_STATES: u64 = 10_000_000;
/// Largest table (`Π (k_i + 1) · n` cells) the sequence DP allocates.
pub const PSARAFTIS_MAX_CELLS: u64 = 60_000_000;
/// Largest `Σ k_i` the permutation search accepts.
pub const PERMUTATION_MAX_LENGTH: u64 = 10;

const INF: u64 = u64::MAX;

fn plus(a: u64, b: u64) -> Result<u64> {
    if a == INF || b == INF {
        return Ok(INF);
    }
    a.checked_add(b).filter(|&s| s <= MAX_FINITE).ok_or(Error::Overflow("tour cost"))
}

fn raw(c: Cost) -> u64 {
    c.value().unwrap_or(INF)
}

fn to_cost(v: u64) -> Cost {
    if v == INF {
        Cost::Infinite
    } else {
        Cost::Finite(v)
    }
}

/// Optimal tour cost by dynamic programming over (remaining visits, current
/// city), with the tour anchored at the first visit of city 0.
pub fn brute_psaraftis(inst: &Instance) -> Result<Cost> {
    brute_psaraftis_tour(inst).map(|(c, _)| c)
}

/// Like [`brute_psaraftis`], also returning an optimal visit sequence
/// starting at city 0.
pub fn brute_psaraftis_tour(inst: &Instance) -> Result<(Cost, Vec<usize>)> {
    let n = inst.n();
    let k = inst.multiplicities();
    let mut states: u64 = 1;
    for &ki in k {
        states =
            states.checked_mul(ki + 1).filter(|&s| s <= PSARAFTIS_MAX_STATES).ok_or_else(|| {
                Error::Guard(format!(
                    "sequence DP needs at most {PSARAFTIS_MAX_STATES} visit-count states"
                ))
            })?;
    }
    if states * n as u64 > PSARAFTIS_MAX_CELLS {
        return Err(Error::Guard(format!(
            "sequence DP table would exceed {PSARAFTIS_MAX_CELLS} cells"
        )));
    }
    let states = states as usize;
    let mut stride = vec![1usize; n];
    for i in 1..n {
        stride[i] = stride[i - 1] * (k[i - 1] as usize + 1);
    }

    // value[r * n + j]: cheapest way to finish from city j with visits r
    // still owed, ending with the edge back to city 0.
    let mut value = vec![INF; states * n];
    let mut digits = vec![0u64; n];
    for idx in 0..states {
        for j in 0..n {
            let mut best = INF;
            if idx == 0 {
                best = raw(inst.d(j, 0));
            } else {
                for (next, &left) in digits.iter().enumerate() {
                    if left > 0 {
                        let tail = value[(idx - stride[next]) * n + next];
                        best = best.min(plus(raw(inst.d(j, next)), tail)?);
                    }
                }
            }
            value[idx * n + j] = best;
        }
        for (d, &ki) in digits.iter_mut().zip(k) {
            if *d < ki {
                *d += 1;
                break;
            }
            *d = 0;
        }
    }

    let mut left: Vec<u64> = k.to_vec();
    left[0] -= 1;
    let mut idx: usize = left.iter().zip(&stride).map(|(&l, &s)| l as usize * s).sum();
    let best = value[idx * n];
    let mut seq = vec![0];
    let mut at = 0;
    while idx != 0 {
        let mut choice = None;
        for next in 0..n {
            if left[next] > 0 {
                let c = plus(raw(inst.d(at, next)), value[(idx - stride[next]) * n + next])?;
                if c == value[idx * n + at] {
                    choice = Some(next);
                    break;
                }
            }
        }
        let next = choice.expect("some move attains the stored optimum");
        left[next] -= 1;
        idx -= stride[next];
        seq.push(next);
        at = next;
    }
    Ok((to_cost(best), seq))
}

/// Optimal tour cost by trying every distinct arrangement of the visit
/// multiset with city 0 first.
pub fn brute_permutation(inst: &Instance) -> Result<Cost> {
    brute_permutation_tour(inst).map(|(c, _)| c)
}

pub fn brute_permutation_tour(inst: &Instance) -> Result<(Cost, Vec<usize>)> {
    let length = inst.tour_length()?;
    if length > PERMUTATION_MAX_LENGTH {
        return Err(Error::Guard(format!(
            "permutation search needs at most {PERMUTATION_MAX_LENGTH} visits, instance has {length}"
        )));
    }
    let mut left: Vec<u64> = inst.multiplicities().to_vec();
    left[0] -= 1;
    let mut seq = vec![0];
    let mut best = (INF, None);
    arrange(inst, &mut left, &mut seq, length as usize, &mut best)?;
    let (cost, seq) = best;
    Ok((to_cost(cost), seq.expect("at least one arrangement exists")))
}

fn arrange(
    inst: &Instance,
    left: &mut [u64],
    seq: &mut Vec<usize>,
    length: usize,
    best: &mut (u64, Option<Vec<usize>>),
) -> Result<()> {
    if seq.len() == length {
        let mut total = 0;
        for (idx, &u) in seq.iter().enumerate() {
            total = plus(total, raw(inst.d(u, seq[(idx + 1) % length])))?;
        }
        if best.1.is_none() || total < best.0 {
            *best = (total, Some(seq.clone()));
        }
        return Ok(());
    }
    for city in 0..left.len() {
        if left[city] > 0 {
            left[city] -= 1;
            seq.push(city);
            arrange(inst, left, seq, length, best)?;
            seq.pop();
            left[city] += 1;
        }
    }
    Ok(())
}
