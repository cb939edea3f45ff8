//! Dynamic program over (vertex subset, out-degree vector) pairs.
//!
//! A state is a subset of the vertices containing the root together with an
//! out-degree vector over it; in-degrees are implied (0 at the root, 1
//! elsewhere). Each state removes its lowest-index vertex with no remaining
//! out-degree and tries every admissible parent for it. The table only keeps
//! the chosen parent and the optimal cost, and is reused across degree
//! sequences sharing a root.

use rustc_hash::FxHashMap;

use super::{add, to_cost, Weight, INF};
use crate::cost::Cost;
use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::trees::DirectedTree;

/// Largest city count the table can key.
pub const DP_MAX_CITIES: usize = 20;
const BITS: usize = 5;

#[derive(Debug, Clone, Copy)]
struct Entry {
    parent: u8,
    cost: Weight,
}

pub struct DpTable<'a> {
    inst: &'a Instance,
    root: usize,
    memo: FxHashMap<u128, Entry>,
}

fn pack(mask: u32, out: &[u8]) -> u128 {
    let mut key = mask as u128;
    for (v, &d) in out.iter().enumerate() {
        key |= (d as u128) << (DP_MAX_CITIES + BITS * v);
    }
    key
}

fn unpack(key: u128, n: usize) -> (u32, Vec<u8>) {
    let mask = (key & ((1u128 << DP_MAX_CITIES) - 1)) as u32;
    let out =
        (0..n).map(|v| ((key >> (DP_MAX_CITIES + BITS * v)) & ((1 << BITS) - 1)) as u8).collect();
    (mask, out)
}

impl<'a> DpTable<'a> {
    pub fn new(inst: &'a Instance, root: usize) -> Result<Self> {
        if inst.n() > DP_MAX_CITIES {
            return Err(Error::Guard(format!(
                "dp supports at most {DP_MAX_CITIES} cities, instance has {}",
                inst.n()
            )));
        }
        if root >= inst.n() {
            return Err(Error::InvalidInput(format!("root {root} out of range")));
        }
        Ok(DpTable { inst, root, memo: FxHashMap::default() })
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Stored states as (subset mask, out-degree vector over all cities, cost).
    pub fn entries(&self) -> impl Iterator<Item = (u32, Vec<u32>, Cost)> + '_ {
        let n = self.inst.n();
        self.memo.iter().map(move |(&key, e)| {
            let (mask, out) = unpack(key, n);
            let cost = if e.cost >= INF { Cost::Infinite } else { Cost::Finite(e.cost as u64) };
            (mask, out.into_iter().map(u32::from).collect(), cost)
        })
    }

    /// Optimal tree for `ds`, which must be rooted at this table's root.
    pub fn min_tree(&mut self, ds: &DegreeSequence) -> Result<(DirectedTree, Cost)> {
        let n = self.inst.n();
        if ds.n() != n || ds.root() != self.root {
            return Err(Error::InvalidInput("degree sequence does not match the table".into()));
        }
        let full = (1u32 << n) - 1;
        let mut out: Vec<u8> = ds.out_degrees().iter().map(|&d| d as u8).collect();
        let cost = self.solve(full, &mut out)?;

        let mut parent = vec![None; n];
        let mut mask = full;
        let mut out: Vec<u8> = ds.out_degrees().iter().map(|&d| d as u8).collect();
        while mask.count_ones() > 1 {
            let leaf = self.leaf(mask, &out);
            let p = self.memo[&pack(mask, &out)].parent as usize;
            parent[leaf] = Some(p);
            out[p] -= 1;
            mask &= !(1 << leaf);
        }
        Ok((DirectedTree::from_parents(self.root, parent)?, to_cost(cost)?))
    }

    fn leaf(&self, mask: u32, out: &[u8]) -> usize {
        (0..out.len())
            .find(|&v| v != self.root && mask >> v & 1 == 1 && out[v] == 0)
            .expect("a feasible state has a leaf")
    }

    fn solve(&mut self, mask: u32, out: &mut [u8]) -> Result<Weight> {
        if mask.count_ones() == 1 {
            return Ok(0);
        }
        let key = pack(mask, out);
        if let Some(e) = self.memo.get(&key) {
            return Ok(e.cost);
        }
        let leaf = self.leaf(mask, out);
        let rest = mask & !(1 << leaf);
        let last = rest.count_ones() == 1;
        let mut best = Entry { parent: u8::MAX, cost: Weight::MAX };
        for j in 0..out.len() {
            if rest >> j & 1 == 0 {
                continue;
            }
            let spare = if j == self.root && !last { 2 } else { 1 };
            if out[j] < spare {
                continue;
            }
            out[j] -= 1;
            let sub = self.solve(rest, out);
            out[j] += 1;
            let c = add(super::weight(self.inst.d(j, leaf)), sub?);
            if c < best.cost {
                best = Entry { parent: j as u8, cost: c };
            }
        }
        debug_assert!(best.parent != u8::MAX);
        self.memo.insert(key, best);
        Ok(best.cost)
    }
}

/// Minimum-cost tree realizing `ds`, with a fresh table.
pub fn min_tree_dp(ds: &DegreeSequence, inst: &Instance) -> Result<(DirectedTree, Cost)> {
    DpTable::new(inst, ds.root())?.min_tree(ds)
}
