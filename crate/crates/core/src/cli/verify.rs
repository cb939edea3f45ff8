//! Independent checks of a solution file against an instance.

use crate::cost::{try_sum, Cost};
use crate::euler::{cycles_multigraph, walk_multigraph};
use crate::instance::Instance;
use crate::multigraph::DirectedMultigraph;

use super::format::SolutionFile;

/// Every failed check, one message each. Empty means the solution is valid.
pub fn verify_solution(inst: &Instance, sol: &SolutionFile) -> Vec<String> {
    let n = inst.n();
    let mut failures = Vec::new();

    if let Some(&(i, j)) = sol.edges.keys().find(|&&(i, j)| i >= n || j >= n) {
        failures.push(format!("edge ({i}, {j}) names a city outside 0..{n}"));
        return failures;
    }
    let edges =
        match DirectedMultigraph::from_edges(n, sol.edges.iter().map(|(&(i, j), &m)| (i, j, m))) {
            Ok(g) => g,
            Err(e) => {
                failures.push(format!("edge multiset rejected: {e}"));
                return failures;
            }
        };

    for v in 0..n {
        let (out, inn, k) = (edges.out_degree(v), edges.in_degree(v), inst.multiplicity(v));
        if out != k || inn != k {
            failures.push(format!(
                "degree balance violated at city {v}: out {out}, in {inn}, required {k}"
            ));
        }
    }
    if !edges.is_connected() {
        failures.push("edge multiset is not connected".into());
    }

    let recomputed = sol
        .edges
        .iter()
        .map(|(&(i, j), &m)| inst.d(i, j).checked_mul(m))
        .collect::<crate::error::Result<Vec<Cost>>>()
        .and_then(try_sum);
    match recomputed {
        Ok(c) if c == sol.cost && c.is_finite() => {}
        Ok(c) if c == sol.cost => failures.push("tour cost is infinite".into()),
        Ok(c) => failures.push(format!("cost mismatch: stated {}, recomputed {c}", sol.cost)),
        Err(e) => failures.push(format!("cost mismatch: recomputation failed: {e}")),
    }

    if !sol.cycles.is_empty() {
        if let Some(msg) = check_cycles(n, &sol.cycles, &edges) {
            failures.push(msg);
        }
    }
    if let Some(tour) = &sol.tour {
        match walk_multigraph(n, tour) {
            Ok(g) if g == edges => {}
            Ok(_) => failures.push("tour does not re-induce the edge multiset".into()),
            Err(e) => failures.push(format!("tour rejected: {e}")),
        }
    }
    failures
}

fn check_cycles(
    n: usize,
    cycles: &[(Vec<usize>, u64)],
    edges: &DirectedMultigraph,
) -> Option<String> {
    for (cycle, c) in cycles {
        if *c == 0 {
            return Some("cycle certificate has a zero repetition count".into());
        }
        let mut seen = vec![false; n];
        for &v in cycle {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Some(format!("cycle certificate entry {cycle:?} is not a simple cycle"));
            }
        }
    }
    match cycles_multigraph(n, cycles) {
        Ok(g) if &g == edges => None,
        Ok(_) => Some("cycle certificate does not reproduce the edge multiset".into()),
        Err(e) => Some(format!("cycle certificate rejected: {e}")),
    }
}
