//! Degree completion as a Hitchcock transportation problem.
//!
//! Successive shortest paths with node potentials on the network
//! `s -> S_i -> T_j -> t`. Middle arcs are uncapacitated and every
//! augmentation ships the full bottleneck, so the number of augmentations
//! depends on `n` and the costs but not on the size of supplies.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::multigraph::DirectedMultigraph;

/// Ship `supply[i]` units out of every `i` and `demand[j]` units into every
/// `j`; a unit on pair `(i, j)` costs `cost[i * n + j]`, infinite pairs are
/// unusable.
#[derive(Debug, Clone)]
pub struct TransportProblem<'a> {
    n: usize,
    supply: Vec<u64>,
    demand: Vec<u64>,
    cost: &'a [Cost],
}

impl<'a> TransportProblem<'a> {
    pub fn new(supply: Vec<u64>, demand: Vec<u64>, cost: &'a [Cost]) -> Result<Self> {
        let n = supply.len();
        if demand.len() != n || cost.len() != n * n {
            return Err(Error::InvalidInput("transport dimensions disagree".into()));
        }
        let total = |v: &[u64]| v.iter().map(|&x| x as u128).sum::<u128>();
        if total(&supply) != total(&demand) {
            return Err(Error::InvalidInput("total supply differs from total demand".into()));
        }
        Ok(TransportProblem { n, supply, demand, cost })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn supply(&self) -> &[u64] {
        &self.supply
    }

    pub fn demand(&self) -> &[u64] {
        &self.demand
    }

    fn d(&self, i: usize, j: usize) -> Cost {
        self.cost[i * self.n + j]
    }
}

/// An optimal shipment together with a dual certificate: for every finite
/// pair, `d(i,j) - supply_potential[i] + demand_potential[j] >= 0`, with
/// equality wherever flow is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportSolution {
    pub flow: DirectedMultigraph,
    pub cost: Cost,
    pub supply_potential: Vec<i64>,
    pub demand_potential: Vec<i64>,
}

impl TransportSolution {
    /// Checks margins, the recorded cost, dual feasibility and complementary
    /// slackness against `p`.
    pub fn check_certificate(&self, p: &TransportProblem) -> bool {
        let n = p.n;
        if self.flow.n() != n
            || self.supply_potential.len() != n
            || self.demand_potential.len() != n
            || self.flow.out_degrees() != p.supply()
            || self.flow.in_degrees() != p.demand()
        {
            return false;
        }
        let mut total = Cost::ZERO;
        for i in 0..n {
            for j in 0..n {
                let f = self.flow.multiplicity(i, j);
                let Cost::Finite(d) = p.d(i, j) else {
                    if f > 0 {
                        return false;
                    }
                    continue;
                };
                let reduced =
                    d as i128 - self.supply_potential[i] as i128 + self.demand_potential[j] as i128;
                if reduced < 0 || (f > 0 && reduced != 0) {
                    return false;
                }
                match Cost::Finite(d).checked_mul(f).and_then(|c| total.checked_add(c)) {
                    Ok(t) => total = t,
                    Err(_) => return false,
                }
            }
        }
        total == self.cost
    }
}

const UNREACHED: i64 = i64::MAX;

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("transport potentials"))
}

fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("transport potentials"))
}

pub fn solve_transport(p: &TransportProblem) -> Result<TransportSolution> {
    let n = p.n;
    // Node layout: s = 0, S_i = 1 + i, T_j = 1 + n + j, t = 1 + 2n.
    let nodes = 2 * n + 2;
    let (s, t) = (0, nodes - 1);
    let sup = |i: usize| 1 + i;
    let dem = |j: usize| 1 + n + j;

    let mut cost = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            if let Cost::Finite(d) = p.d(i, j) {
                cost[i * n + j] =
                    i64::try_from(d).map_err(|_| Error::Overflow("transport cost"))?;
            }
        }
    }
    let finite = |i: usize, j: usize| p.d(i, j).is_finite();

    let mut flow = vec![0u64; n * n];
    let mut sent = vec![0u64; n];
    let mut recv = vec![0u64; n];
    let mut remaining: u128 = p.supply.iter().map(|&x| x as u128).sum();
    let mut potential = vec![0i64; nodes];
    let mut dist = vec![UNREACHED; nodes];
    let mut prev = vec![usize::MAX; nodes];
    let mut done = vec![false; nodes];

    while remaining > 0 {
        dist.fill(UNREACHED);
        prev.fill(usize::MAX);
        done.fill(false);
        dist[s] = 0;
        loop {
            let mut u = usize::MAX;
            for v in 0..nodes {
                if !done[v] && dist[v] != UNREACHED && (u == usize::MAX || dist[v] < dist[u]) {
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            let du = dist[u];
            let mut relax = |v: usize, arc_cost: i64| -> Result<()> {
                if done[v] {
                    return Ok(());
                }
                let reduced = add(sub(arc_cost, potential[v])?, potential[u])?;
                debug_assert!(reduced >= 0, "negative reduced cost");
                let cand = add(du, reduced)?;
                if cand < dist[v] {
                    dist[v] = cand;
                    prev[v] = u;
                }
                Ok(())
            };
            if u == s {
                for (i, (&out, &cap)) in sent.iter().zip(&p.supply).enumerate() {
                    if out < cap {
                        relax(sup(i), 0)?;
                    }
                }
            } else if u == t {
                for (j, &got) in recv.iter().enumerate() {
                    if got > 0 {
                        relax(dem(j), 0)?;
                    }
                }
            } else if u <= n {
                let i = u - 1;
                if sent[i] > 0 {
                    relax(s, 0)?;
                }
                for j in 0..n {
                    if finite(i, j) {
                        relax(dem(j), cost[i * n + j])?;
                    }
                }
            } else {
                let j = u - 1 - n;
                for i in 0..n {
                    if flow[i * n + j] > 0 {
                        relax(sup(i), -cost[i * n + j])?;
                    }
                }
                if recv[j] < p.demand[j] {
                    relax(t, 0)?;
                }
            }
        }

        let reach = dist[t];
        if reach == UNREACHED {
            return Err(Error::NoCompletion);
        }
        // Capped update keeps every residual reduced cost non-negative,
        // including arcs into nodes the search never reached.
        for v in 0..nodes {
            potential[v] = add(potential[v], dist[v].min(reach))?;
        }

        let mut path = vec![t];
        while *path.last().unwrap() != s {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        let mut bottleneck = u64::MAX;
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            let cap = if u == s {
                p.supply[v - 1] - sent[v - 1]
            } else if v == s {
                sent[u - 1]
            } else if v == t {
                p.demand[u - 1 - n] - recv[u - 1 - n]
            } else if u == t {
                recv[v - 1 - n]
            } else if u <= n {
                u64::MAX
            } else {
                flow[(v - 1) * n + (u - 1 - n)]
            };
            bottleneck = bottleneck.min(cap);
        }
        debug_assert!(bottleneck > 0 && bottleneck < u64::MAX);
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            if u == s {
                sent[v - 1] += bottleneck;
            } else if v == s {
                sent[u - 1] -= bottleneck;
            } else if v == t {
                recv[u - 1 - n] += bottleneck;
            } else if u == t {
                recv[v - 1 - n] -= bottleneck;
            } else if u <= n {
                flow[(u - 1) * n + (v - 1 - n)] += bottleneck;
            } else {
                flow[(v - 1) * n + (u - 1 - n)] -= bottleneck;
            }
        }
        remaining -= bottleneck as u128;
    }

    let mut g = DirectedMultigraph::new(n);
    let mut total = Cost::ZERO;
    for i in 0..n {
        for j in 0..n {
            let f = flow[i * n + j];
            if f > 0 {
                g.add_edge(i, j, f)?;
                total = total.checked_add(p.d(i, j).checked_mul(f)?)?;
            }
        }
    }
    Ok(TransportSolution {
        flow: g,
        cost: total,
        supply_potential: (0..n).map(|i| -potential[sup(i)]).collect(),
        demand_potential: (0..n).map(|j| -potential[dem(j)]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn costs(rows: &[&[u64]]) -> Vec<Cost> {
        rows.iter().flat_map(|r| r.iter().map(|&c| Cost::Finite(c))).collect()
    }

    #[test]
    fn nothing_to_ship() {
        let c = costs(&[&[1, 2], &[3, 4]]);
        let p = TransportProblem::new(vec![0, 0], vec![0, 0], &c).unwrap();
        let sol = solve_transport(&p).unwrap();
        assert!(sol.flow.is_empty());
        assert_eq!(sol.cost, Cost::ZERO);
        assert!(sol.check_certificate(&p));
    }

    #[test]
    fn single_forced_pair() {
        let c = costs(&[&[9, 5], &[9, 9]]);
        let p = TransportProblem::new(vec![1, 0], vec![0, 1], &c).unwrap();
        let sol = solve_transport(&p).unwrap();
        assert_eq!(sol.flow.multiplicity(0, 1), 1);
        assert_eq!(sol.cost, Cost::Finite(5));
        assert!(sol.check_certificate(&p));
    }

    #[test]
    fn rerouting_through_backward_arc() {
        // Greedy would send 0->0; the optimum needs 0->1 and 1->0.
        let c = costs(&[&[1, 2], &[100, 100]]);
        let c = {
            let mut c = c;
            c[3] = Cost::Infinite;
            c
        };
        let p = TransportProblem::new(vec![1, 1], vec![1, 1], &c).unwrap();
        let sol = solve_transport(&p).unwrap();
        assert_eq!(sol.cost, Cost::Finite(102));
        assert!(sol.check_certificate(&p));
    }

    #[test]
    fn unreachable_demand() {
        let c = vec![Cost::Finite(1), Cost::Infinite, Cost::Finite(1), Cost::Infinite];
        let p = TransportProblem::new(vec![1, 0], vec![0, 1], &c).unwrap();
        assert_eq!(solve_transport(&p), Err(Error::NoCompletion));
    }

    #[test]
    fn huge_supplies() {
        let c = costs(&[&[3, 1], &[1, 3]]);
        let big = 1_000_000_000_000u64;
        let p = TransportProblem::new(vec![big, big], vec![big, big], &c).unwrap();
        let sol = solve_transport(&p).unwrap();
        assert_eq!(sol.cost, Cost::Finite(2 * big));
        assert!(sol.check_certificate(&p));
    }

    #[test]
    fn mismatched_totals() {
        let c = costs(&[&[1]]);
        assert!(TransportProblem::new(vec![1], vec![2], &c).is_err());
    }
}
