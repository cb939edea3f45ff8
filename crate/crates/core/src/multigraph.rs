//! Directed multigraphs stored as edge multiplicity maps.

use std::collections::BTreeMap;

use crate::cost::{try_sum, Cost, MAX_FINITE};
use crate::error::{Error, Result};
use crate::instance::Instance;

/// A multiset of directed edges over vertices `0..n`. Self-loops are allowed.
///
/// Only positive multiplicities are stored. Row and column sums are kept in
/// step with the map so degrees are O(1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedMultigraph {
    n: usize,
    mult: BTreeMap<(usize, usize), u64>,
    out_deg: Vec<u64>,
    in_deg: Vec<u64>,
}

impl DirectedMultigraph {
    pub fn new(n: usize) -> Self {
        DirectedMultigraph { n, mult: BTreeMap::new(), out_deg: vec![0; n], in_deg: vec![0; n] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut g = DirectedMultigraph::new(n);
        for (i, j, m) in edges {
            g.add_edge(i, j, m)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize, m: u64) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidInput(format!(
                "edge ({i},{j}) out of range for {} vertices",
                self.n
            )));
        }
        if m == 0 {
            return Ok(());
        }
        let checked = |a: u64| a.checked_add(m).filter(|&s| s <= MAX_FINITE);
        let entry = self.mult.get(&(i, j)).copied().unwrap_or(0);
        let (Some(e), Some(o), Some(d)) =
            (checked(entry), checked(self.out_deg[i]), checked(self.in_deg[j]))
        else {
            return Err(Error::Overflow("edge multiplicity"));
        };
        self.mult.insert((i, j), e);
        self.out_deg[i] = o;
        self.in_deg[j] = d;
        Ok(())
    }

    /// Removes `m` copies of `(i, j)`; fails if fewer are present.
    pub fn remove_edge(&mut self, i: usize, j: usize, m: u64) -> Result<()> {
        if m == 0 {
            return Ok(());
        }
        let have = self.multiplicity(i, j);
        if have < m {
            return Err(Error::InvalidInput(format!(
                "cannot remove {m} copies of ({i},{j}), only {have} present"
            )));
        }
        if have == m {
            self.mult.remove(&(i, j));
        } else {
            self.mult.insert((i, j), have - m);
        }
        self.out_deg[i] -= m;
        self.in_deg[j] -= m;
        Ok(())
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        self.mult.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn out_degree(&self, i: usize) -> u64 {
        self.out_deg[i]
    }

    pub fn in_degree(&self, i: usize) -> u64 {
        self.in_deg[i]
    }

    pub fn out_degrees(&self) -> &[u64] {
        &self.out_deg
    }

    pub fn in_degrees(&self) -> &[u64] {
        &self.in_deg
    }

    /// Distinct edges with their multiplicities, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.mult.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    /// Out-edges of `i` with their multiplicities, by increasing head.
    pub fn out_edges(&self, i: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.mult.range((i, 0)..(i + 1, 0)).map(|(&(_, j), &m)| (j, m))
    }

    pub fn distinct_edges(&self) -> usize {
        self.mult.len()
    }

    pub fn total_edges(&self) -> u64 {
        self.out_deg.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn is_balanced(&self) -> bool {
        self.out_deg == self.in_deg
    }

    /// Pointwise sum `self + other`.
    pub fn sum(&self, other: &DirectedMultigraph) -> Result<DirectedMultigraph> {
        if self.n != other.n {
            return Err(Error::InvalidInput("multigraph sizes differ".into()));
        }
        let mut g = self.clone();
        for (i, j, m) in other.edges() {
            g.add_edge(i, j, m)?;
        }
        Ok(g)
    }

    /// Pointwise difference `self - other`; fails unless `other <= self` pointwise.
    pub fn difference(&self, other: &DirectedMultigraph) -> Result<DirectedMultigraph> {
        if self.n != other.n {
            return Err(Error::InvalidInput("multigraph sizes differ".into()));
        }
        let mut g = self.clone();
        for (i, j, m) in other.edges() {
            g.remove_edge(i, j, m)?;
        }
        Ok(g)
    }

    /// `Σ m(i,j) · d(i,j)`; infinite as soon as one present edge is.
    pub fn cost(&self, inst: &Instance) -> Result<Cost> {
        if self.n != inst.n() {
            return Err(Error::InvalidInput("multigraph and instance sizes differ".into()));
        }
        try_sum(
            self.edges()
                .map(|(i, j, m)| inst.d(i, j).checked_mul(m))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Whether the underlying undirected graph connects all `n` vertices.
    /// Self-loops never connect anything; a single vertex is connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(self.n);
        let mut components = self.n;
        for (i, j, _) in self.edges() {
            if i != j && uf.union(i, j) {
                components -= 1;
            }
        }
        components == 1
    }

    /// Whether this is the edge set of a closed walk visiting city `i`
    /// exactly `k[i]` times: connected, with in- and out-degree `k[i]` everywhere.
    pub fn is_valid_tour_edgeset(&self, inst: &Instance) -> bool {
        self.n == inst.n()
            && (0..self.n).all(|i| {
                self.out_deg[i] == inst.multiplicity(i) && self.in_deg[i] == inst.multiplicity(i)
            })
            && self.is_connected()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
