//! Degree sequences of rooted directed spanning trees.
//!
//! A sequence is feasible for root `r` iff the root has in-degree 0, every
//! other vertex has in-degree 1, the root has out-degree at least 1 and the
//! out-degrees sum to `n - 1`. In-degrees are therefore implied by the root,
//! and only out-degree vectors are generated.

use crate::error::{Error, Result};

/// Out-degrees of a rooted directed spanning tree on `0..n`. In-degrees are
/// implied: 0 at the root, 1 elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    root: usize,
    out: Vec<u32>,
}

impl DegreeSequence {
    pub fn new(out: Vec<u32>, root: usize) -> Result<Self> {
        let n = out.len();
        if n < 2 || root >= n {
            return Err(Error::InvalidInput(format!(
                "degree sequence needs at least two vertices and a root in range (n={n}, root={root})"
            )));
        }
        if !is_feasible(&out, root) {
            return Err(Error::InvalidInput(format!(
                "{out:?} is not a feasible out-degree sequence for root {root}"
            )));
        }
        Ok(DegreeSequence { root, out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn out_degree(&self, v: usize) -> u32 {
        self.out[v]
    }

    pub fn in_degree(&self, v: usize) -> u32 {
        u32::from(v != self.root)
    }

    pub fn out_degrees(&self) -> &[u32] {
        &self.out
    }

    pub fn in_degrees(&self) -> Vec<u32> {
        (0..self.n()).map(|v| self.in_degree(v)).collect()
    }
}

/// Whether `out` is the out-degree vector of some directed spanning tree rooted at `root`.
pub fn is_feasible(out: &[u32], root: usize) -> bool {
    let n = out.len();
    if n < 2 || root >= n {
        return false;
    }
    let sum: u64 = out.iter().map(|&d| u64::from(d)).sum();
    sum == n as u64 - 1 && out[root] >= 1
}

/// Number of feasible sequences on `n` vertices with a fixed root: `C(2n-3, n-1)`.
pub fn count_feasible(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidInput("count_feasible needs n >= 2".into()));
    }
    binomial(2 * n as u64 - 3, n as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// All `r`-subsets of `{1, ..., n}` in lexicographic order, each as an
/// increasing list of positions. Successor rule: bump the rightmost entry that
/// is not at its maximum `n - r + i` and reset the tail to consecutive values.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    comb: Vec<usize>,
    state: CombState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CombState {
    Fresh,
    Running,
    Done,
}

impl Combinations {
    pub fn new(n: usize, r: usize) -> Self {
        Combinations {
            n,
            comb: (1..=r).collect(),
            state: if r > n { CombState::Done } else { CombState::Fresh },
        }
    }

    /// Advances in place; returns the current subset, or `None` when exhausted.
    pub fn advance(&mut self) -> Option<&[usize]> {
        match self.state {
            CombState::Done => return None,
            CombState::Fresh => {
                self.state = CombState::Running;
                return Some(&self.comb);
            }
            CombState::Running => {}
        }
        let r = self.comb.len();
        let Some(i) = (0..r).rev().find(|&i| self.comb[i] != self.n - r + i + 1) else {
            self.state = CombState::Done;
            return None;
        };
        self.comb[i] += 1;
        for j in i + 1..r {
            self.comb[j] = self.comb[j - 1] + 1;
        }
        Some(&self.comb)
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().map(<[usize]>::to_vec)
    }
}

/// Decodes bar positions (1-based, among `r + m` stars-and-bars slots) into the
/// `m + 1` star counts between consecutive bars. The counts sum to `r`.
pub fn combination_to_sequence(bars: &[usize], r: usize) -> Vec<u32> {
    let mut seq = Vec::with_capacity(bars.len() + 1);
    write_sequence(bars, r, &mut seq);
    seq
}

fn write_sequence(bars: &[usize], r: usize, seq: &mut Vec<u32>) {
    seq.clear();
    let m = bars.len();
    let mut prev = 0;
    for &a in bars {
        seq.push((a - prev - 1) as u32);
        prev = a;
    }
    seq.push((r + m - prev) as u32);
}

/// Every vector of `bins` non-negative integers summing to `total`, in
/// lexicographic order. There are `C(total + bins - 1, bins - 1)` of them.
#[derive(Debug, Clone)]
pub struct Distribute {
    total: usize,
    bars: Combinations,
    buf: Vec<u32>,
}

impl Distribute {
    pub fn new(total: usize, bins: usize) -> Self {
        assert!(bins >= 1, "distribute needs at least one bin");
        Distribute {
            total,
            bars: Combinations::new(total + bins - 1, bins - 1),
            buf: Vec::with_capacity(bins),
        }
    }

    /// Like `next` but reuses an internal buffer.
    pub fn advance(&mut self) -> Option<&[u32]> {
        let bars = self.bars.advance()?;
        write_sequence(bars, self.total, &mut self.buf);
        Some(&self.buf)
    }
}

impl Iterator for Distribute {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        self.advance().map(<[u32]>::to_vec)
    }
}

pub fn distribute(total: usize, bins: usize) -> Distribute {
    Distribute::new(total, bins)
}

/// Lazy stream of all feasible out-degree sequences for `root`, lexicographic.
#[derive(Debug, Clone)]
pub struct FeasibleSequences {
    root: usize,
    inner: Distribute,
}

impl Iterator for FeasibleSequences {
    type Item = DegreeSequence;

    fn next(&mut self) -> Option<DegreeSequence> {
        let mut out = self.inner.advance()?.to_vec();
        out[self.root] += 1;
        Some(DegreeSequence { root: self.root, out })
    }
}

/// Spreads `n - 2` units over `n` vertices and adds the root's mandatory unit.
pub fn enumerate_feasible(n: usize, root: usize) -> FeasibleSequences {
    assert!(n >= 2 && root < n, "enumerate_feasible needs n >= 2 and root < n");
    FeasibleSequences { root, inner: Distribute::new(n - 2, n) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn feasibility_examples() {
        assert!(is_feasible(&[2, 0, 0], 0));
        assert!(!is_feasible(&[0, 1, 1], 0));
        assert!(!is_feasible(&[1, 1, 1], 0));
    }

    #[test]
    fn enumerate_small() {
        let two: Vec<_> = enumerate_feasible(2, 0).map(|d| d.out).collect();
        assert_eq!(two, vec![vec![1, 0]]);
        let three: HashSet<_> = enumerate_feasible(3, 0).map(|d| d.out).collect();
        let expected: HashSet<_> = [vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1]].into();
        assert_eq!(three, expected);
        assert_eq!(enumerate_feasible(5, 0).count(), 35);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all: Vec<_> = enumerate_feasible(6, 2).collect();
        assert!(all.windows(2).all(|w| w[0].out < w[1].out));
    }

    #[test]
    fn counts() {
        assert_eq!(count_feasible(2), Ok(1));
        assert_eq!(count_feasible(3), Ok(3));
        assert_eq!(count_feasible(10), Ok(24310));
        assert!(count_feasible(1).is_err());
    }

    #[test]
    fn distribute_examples() {
        assert_eq!(distribute(0, 3).collect::<Vec<_>>(), vec![vec![0, 0, 0]]);
        assert_eq!(distribute(2, 2).collect::<Vec<_>>(), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(distribute(5, 1).collect::<Vec<_>>(), vec![vec![5]]);
    }

    #[test]
    fn bar_positions_decode() {
        // Four stars and four bars: * | * | * * | |
        assert_eq!(combination_to_sequence(&[2, 4, 7, 8], 4), vec![1, 1, 2, 0, 0]);
    }

    #[test]
    fn combinations_lexicographic() {
        let all: Vec<_> = Combinations::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all.first(), Some(&vec![1, 2, 3]));
        assert_eq!(all.last(), Some(&vec![3, 4, 5]));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 4), Ok(35));
        assert_eq!(binomial(17, 9), Ok(24310));
        assert_eq!(binomial(3, 5), Ok(0));
        assert_eq!(binomial(0, 0), Ok(1));
    }
}
