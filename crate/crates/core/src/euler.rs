//! Tours from balanced connected multigraphs: explicit Eulerian expansion and
//! a compact cycle decomposition.

use crate::error::{Error, Result};
use crate::multigraph::DirectedMultigraph;

/// Default cap on the length of an explicit tour.
pub const DEFAULT_EXPANSION_LIMIT: u64 = 1_000_000;

fn check_tour_shape(g: &DirectedMultigraph) -> Result<()> {
    if !g.is_balanced() {
        return Err(Error::InvalidInput("multigraph is not balanced".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.out_degree(v) == 0) {
        return Err(Error::InvalidInput(format!("vertex {v} has no edges")));
    }
    if !g.is_connected() {
        return Err(Error::InvalidInput("multigraph is not connected".into()));
    }
    Ok(())
}

/// A closed walk from `start` using every edge exactly as often as its
/// multiplicity. The returned sequence omits the final return to `start`.
/// Refuses when the walk would be longer than `limit`.
pub fn eulerian_expand(g: &DirectedMultigraph, start: usize, limit: u64) -> Result<Vec<usize>> {
    if start >= g.n() {
        return Err(Error::InvalidInput(format!("start vertex {start} out of range")));
    }
    check_tour_shape(g)?;
    let total = g.total_edges();
    if total > limit {
        return Err(Error::Guard(format!(
            "tour has {total} steps, above the expansion limit of {limit}"
        )));
    }

    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); g.n()];
    for (i, j, m) in g.edges() {
        adj[i].push((j, m));
    }
    let mut cursor = vec![0usize; g.n()];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(total as usize + 1);
    while let Some(&u) = stack.last() {
        let list = &mut adj[u];
        while cursor[u] < list.len() && list[cursor[u]].1 == 0 {
            cursor[u] += 1;
        }
        if let Some(entry) = list.get_mut(cursor[u]) {
            entry.1 -= 1;
            stack.push(entry.0);
        } else {
            circuit.push(u);
            stack.pop();
        }
    }
    circuit.reverse();
    circuit.pop();
    debug_assert_eq!(circuit.len() as u64, total);
    Ok(circuit)
}

/// Edge multiset of the closed walk `seq` (including the edge back to the
/// first vertex).
pub fn walk_multigraph(n: usize, seq: &[usize]) -> Result<DirectedMultigraph> {
    let mut g = DirectedMultigraph::new(n);
    for (idx, &u) in seq.iter().enumerate() {
        let v = seq[(idx + 1) % seq.len()];
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!("vertex {} out of range", u.max(v))));
        }
        g.add_edge(u, v, 1)?;
    }
    Ok(g)
}

/// Decomposes a balanced multigraph into simple cycles with repetition
/// counts. Each cycle is listed by its vertices in walk order. Every peel
/// removes the cycle's minimum multiplicity, zeroing at least one distinct
/// edge, so there are at most as many cycles as distinct edges.
pub fn cycle_certificate(g: &DirectedMultigraph) -> Result<Vec<(Vec<usize>, u64)>> {
    if !g.is_balanced() {
        return Err(Error::InvalidInput("multigraph is not balanced".into()));
    }
    let mut rest = g.clone();
    let mut cycles = Vec::new();
    let mut position = vec![usize::MAX; g.n()];
    loop {
        let Some(start) = rest.edges().next().map(|(i, _, _)| i) else {
            break;
        };
        let mut walk = vec![start];
        position[start] = 0;
        let cycle_start = loop {
            let u = *walk.last().unwrap();
            let v = rest
                .out_edges(u)
                .next()
                .map(|(v, _)| v)
                .expect("balanced graph has an out-edge wherever it has an in-edge");
            if position[v] != usize::MAX {
                break position[v];
            }
            position[v] = walk.len();
            walk.push(v);
        };
        for &v in &walk {
            position[v] = usize::MAX;
        }
        let cycle = walk.split_off(cycle_start);
        let step = |idx: usize| (cycle[idx], cycle[(idx + 1) % cycle.len()]);
        let count = (0..cycle.len())
            .map(|idx| {
                let (a, b) = step(idx);
                rest.multiplicity(a, b)
            })
            .min()
            .expect("cycle is non-empty");
        for idx in 0..cycle.len() {
            let (a, b) = step(idx);
            rest.remove_edge(a, b, count)?;
        }
        cycles.push((cycle, count));
    }
    Ok(cycles)
}

/// Weighted union of a cycle list.
pub fn cycles_multigraph(n: usize, cycles: &[(Vec<usize>, u64)]) -> Result<DirectedMultigraph> {
    let mut g = DirectedMultigraph::new(n);
    for (cycle, count) in cycles {
        if cycle.is_empty() {
            return Err(Error::InvalidInput("empty cycle".into()));
        }
        for (idx, &u) in cycle.iter().enumerate() {
            let v = cycle[(idx + 1) % cycle.len()];
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("vertex {} out of range", u.max(v))));
            }
            g.add_edge(u, v, *count)?;
        }
    }
    Ok(g)
}
