//! Balanced tree separators.
//!
//! These constructions certify that the divide-and-conquer tree optimizers
//! always have a witness among their guesses; the optimizers themselves scan
//! every partition and never call them.

use super::DirectedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionMode {
    /// Both sides at most `⌈2n/3⌉`, one boundary vertex.
    Centroid,
    /// Both sides at most `⌈n/2⌉`, at most `⌈log₂ n⌉` boundary vertices.
    PerfectlyBalanced,
}

/// A two-sided vertex partition of a tree in which every crossing edge
/// touches a boundary vertex on the `v1` side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedPartition {
    pub mode: PartitionMode,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub boundary: Vec<usize>,
}

impl BalancedPartition {
    fn from_membership(mode: PartitionMode, in_v1: &[bool], boundary: Vec<usize>) -> Self {
        let (v1, v2) = (0..in_v1.len()).partition(|&v| in_v1[v]);
        BalancedPartition { mode, v1, v2, boundary }
    }

    pub fn n(&self) -> usize {
        self.v1.len() + self.v2.len()
    }

    pub fn max_side(&self) -> usize {
        self.v1.len().max(self.v2.len())
    }

    /// Size bounds for the partition's mode.
    pub fn within_bounds(&self) -> bool {
        let n = self.n();
        match self.mode {
            PartitionMode::Centroid => {
                self.max_side() <= (2 * n).div_ceil(3) && self.boundary.len() == 1
            }
            PartitionMode::PerfectlyBalanced => {
                self.max_side() <= n.div_ceil(2) && self.boundary.len() <= ceil_log2(n)
            }
        }
    }

    /// Whether the sides cover the tree, the boundary lies in `v1`, and every
    /// crossing tree edge has a boundary endpoint.
    pub fn separates(&self, tree: &DirectedTree) -> bool {
        let n = tree.n();
        if self.n() != n {
            return false;
        }
        let mut side = vec![None; n];
        for &v in &self.v1 {
            side[v] = Some(1);
        }
        for &v in &self.v2 {
            if side[v].is_some() {
                return false;
            }
            side[v] = Some(2);
        }
        if side.contains(&None) || self.boundary.iter().any(|&b| side[b] != Some(1)) {
            return false;
        }
        tree.edges().all(|(u, v)| {
            side[u] == side[v] || self.boundary.contains(&u) || self.boundary.contains(&v)
        })
    }
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Vertices reachable from `start` without entering a blocked vertex.
fn component(adj: &[Vec<usize>], start: usize, blocked: &[bool]) -> Vec<usize> {
    let mut seen = blocked.to_vec();
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(u) = stack.pop() {
        out.push(u);
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Components of `region - center`, largest first (ties: smallest vertex first).
fn components_around(
    adj: &[Vec<usize>],
    center: usize,
    in_region: &[bool],
    skip: &[usize],
) -> Vec<Vec<usize>> {
    let mut blocked: Vec<bool> = in_region.iter().map(|&r| !r).collect();
    blocked[center] = true;
    let mut comps: Vec<Vec<usize>> = adj[center]
        .iter()
        .filter(|&&u| in_region[u] && !skip.contains(&u))
        .map(|&u| component(adj, u, &blocked))
        .collect();
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
}

/// A vertex of the (connected) region whose removal leaves pieces of size at
/// most half the region. Smallest index wins ties.
fn centroid(adj: &[Vec<usize>], in_region: &[bool]) -> usize {
    (0..adj.len())
        .filter(|&c| in_region[c])
        .min_by_key(|&c| {
            let largest = components_around(adj, c, in_region, &[]).first().map_or(0, Vec::len);
            (largest, c)
        })
        .expect("region is non-empty")
}

/// Separator with a single boundary vertex, the centroid: component subtrees
/// are moved to `v2` largest-first until `v2` holds at least `⌊n/3⌋` vertices.
pub fn centroid_partition(tree: &DirectedTree) -> BalancedPartition {
    let n = tree.n();
    assert!(n >= 2, "partition needs at least two vertices");
    let adj = tree.neighbors();
    let everything = vec![true; n];
    let c = centroid(&adj, &everything);
    let comps = components_around(&adj, c, &everything, &[]);
    let third = n / 3;
    let mut in_v1 = vec![true; n];
    let mut moved = 0;
    for comp in &comps {
        for &v in comp {
            in_v1[v] = false;
        }
        moved += comp.len();
        if moved >= third {
            break;
        }
    }
    BalancedPartition::from_membership(PartitionMode::Centroid, &in_v1, vec![c])
}

struct Sides {
    in_v1: Vec<bool>,
    size1: usize,
    size2: usize,
}

impl Sides {
    fn move_to_v1(&mut self, vs: &[usize]) {
        for &v in vs {
            debug_assert!(!self.in_v1[v]);
            self.in_v1[v] = true;
        }
        self.size1 += vs.len();
        self.size2 -= vs.len();
    }

    fn move_to_v2(&mut self, vs: &[usize]) {
        for &v in vs {
            debug_assert!(self.in_v1[v]);
            self.in_v1[v] = false;
        }
        self.size1 -= vs.len();
        self.size2 += vs.len();
    }
}

/// Separator with both sides at most `⌈n/2⌉` and at most `⌈log₂ n⌉` boundary
/// vertices along a simple path in `v1`.
///
/// Starts from the centroid split, then repeatedly walks from the last
/// boundary vertex towards the centroid of the pending subtree, pulling path
/// vertices and their side subtrees into `v1` until the sides balance or `v1`
/// would become the larger side.
pub fn perfectly_balanced_partition(tree: &DirectedTree) -> BalancedPartition {
    let n = tree.n();
    assert!(n >= 2, "partition needs at least two vertices");
    let adj = tree.neighbors();
    let half = n.div_ceil(2);
    let everything = vec![true; n];

    let first = centroid(&adj, &everything);
    let mut path_vertices = vec![first];
    let mut sides = Sides { in_v1: vec![true; n], size1: n, size2: 0 };
    let mut pending: Vec<usize> = Vec::new();
    for comp in components_around(&adj, first, &everything, &[]) {
        sides.move_to_v2(&comp);
        pending = comp;
        if sides.size2 >= sides.size1 {
            break;
        }
    }

    'grow: while sides.size2 > half && !pending.is_empty() {
        let anchor = *path_vertices.last().expect("non-empty");
        let mut in_pending = vec![false; n];
        for &v in &pending {
            in_pending[v] = true;
        }
        let target = centroid(&adj, &in_pending);
        let path = tree_path(&adj, anchor, target, &in_pending);
        for (idx, &q) in path.iter().enumerate() {
            sides.move_to_v1(&[q]);
            if sides.size1.max(sides.size2) <= half {
                path_vertices.push(q);
                break 'grow;
            }
            let prev = if idx == 0 { anchor } else { path[idx - 1] };
            let next = path.get(idx + 1).copied();
            let mut region = in_pending.clone();
            for &p in &path[..=idx] {
                region[p] = false;
            }
            region[q] = true;
            let skip: Vec<usize> = [Some(prev), next].into_iter().flatten().collect();
            for sub in components_around(&adj, q, &region, &skip) {
                sides.move_to_v1(&sub);
                if sides.size1.max(sides.size2) <= half {
                    path_vertices.push(q);
                    break 'grow;
                }
                if sides.size1 > sides.size2 {
                    sides.move_to_v2(&sub);
                    path_vertices.push(q);
                    pending = sub;
                    continue 'grow;
                }
            }
        }
        // The whole pending subtree fitted into v1: the split is even.
        break;
    }

    // Keep only path vertices that still carry a crossing edge.
    let boundary =
        path_vertices.into_iter().filter(|&b| adj[b].iter().any(|&u| !sides.in_v1[u])).collect();
    BalancedPartition::from_membership(PartitionMode::PerfectlyBalanced, &sides.in_v1, boundary)
}

/// Vertices on the tree path from `from` (excluded) to `to` (included),
/// staying inside `region`.
fn tree_path(adj: &[Vec<usize>], from: usize, to: usize, region: &[bool]) -> Vec<usize> {
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    prev[from] = from;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            break;
        }
        for &v in &adj[u] {
            if region[v] && prev[v] == usize::MAX {
                prev[v] = u;
                stack.push(v);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        path.push(v);
        v = prev[v];
    }
    path.reverse();
    path
}
