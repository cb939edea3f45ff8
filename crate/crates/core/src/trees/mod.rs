//! Rooted directed spanning trees: enumeration by degree sequence, extraction
//! from tours, and balanced separators.

mod enumerate;
mod extract;
mod partition;

pub use enumerate::{enumerate_trees, realize_tree, TreeEnumerator};
pub use extract::extract_spanning_tree;
pub use partition::{
    ceil_log2, centroid_partition, perfectly_balanced_partition, BalancedPartition, PartitionMode,
};

use crate::cost::{try_sum, Cost};
use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::multigraph::DirectedMultigraph;

/// A spanning tree on `0..n` with every edge directed away from `root`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedTree {
    root: usize,
    parent: Vec<Option<usize>>,
}

impl DirectedTree {
    /// Builds a tree from a parent array; `parent[root]` must be `None`.
    pub fn from_parents(root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let tree = DirectedTree { root, parent };
        tree.validate()?;
        Ok(tree)
    }

    pub fn from_edges(n: usize, root: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut parent = vec![None; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range")));
            }
            if parent[v].replace(u).is_some() {
                return Err(Error::InvalidInput(format!("vertex {v} has two parents")));
            }
        }
        DirectedTree::from_parents(root, parent)
    }

    fn validate(&self) -> Result<()> {
        let n = self.parent.len();
        if self.root >= n {
            return Err(Error::InvalidInput("root out of range".into()));
        }
        if self.parent[self.root].is_some() {
            return Err(Error::InvalidInput("root has a parent".into()));
        }
        for (v, p) in self.parent.iter().enumerate() {
            match p {
                None if v != self.root => {
                    return Err(Error::InvalidInput(format!("vertex {v} has no parent")))
                }
                Some(p) if *p >= n || *p == v => {
                    return Err(Error::InvalidInput(format!("vertex {v} has invalid parent {p}")))
                }
                _ => {}
            }
        }
        // Every vertex must reach the root by following parents.
        let mut state = vec![0u8; n]; // 0 unknown, 1 on current path, 2 reaches root
        state[self.root] = 2;
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = self.parent[v].expect("checked above");
            }
            if state[v] == 1 {
                return Err(Error::InvalidInput("parent pointers contain a cycle".into()));
            }
            for u in path {
                state[u] = 2;
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Edges `(parent, child)` ordered by child.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v)))
    }

    pub fn out_degrees(&self) -> Vec<u32> {
        let mut out = vec![0; self.n()];
        for (p, _) in self.edges() {
            out[p] += 1;
        }
        out
    }

    pub fn degree_sequence(&self) -> Result<DegreeSequence> {
        DegreeSequence::new(self.out_degrees(), self.root)
    }

    pub fn cost(&self, inst: &Instance) -> Result<Cost> {
        try_sum(self.edges().map(|(u, v)| inst.d(u, v)))
    }

    pub fn to_multigraph(&self) -> DirectedMultigraph {
        let mut g = DirectedMultigraph::new(self.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v, 1).expect("tree edges are in range");
        }
        g
    }

    /// Children lists, each in increasing order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.n()];
        for (p, v) in self.edges() {
            ch[p].push(v);
        }
        ch
    }

    /// Undirected adjacency lists, each in increasing order.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for (p, v) in self.edges() {
            adj[p].push(v);
            adj[v].push(p);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}
