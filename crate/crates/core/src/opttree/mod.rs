//! Minimum-cost rooted directed spanning tree for a fixed degree sequence.
//!
//! Three interchangeable backends: a dynamic program over vertex subsets
//! (exponential space), and two divide-and-conquer searches over balanced
//! tree separators (polynomial space).

mod dc;
mod dp;

pub use dc::{min_tree_dc, min_tree_dc2, DcOptions, DcStats, DivideAndConquer, Variant};
pub use dp::{min_tree_dp, DpTable, DP_MAX_CITIES};

use crate::cost::{Cost, MAX_FINITE};
use crate::error::{Error, Result};

/// Internal tree weight. Sums of up to 64 finite costs stay far below `INF`,
/// so addition never wraps; anything at or above `INF` is infinite.
pub(crate) type Weight = u128;
pub(crate) const INF: Weight = 1 << 100;

#[inline]
pub(crate) fn weight(c: Cost) -> Weight {
    match c {
        Cost::Finite(v) => v as Weight,
        Cost::Infinite => INF,
    }
}

#[inline]
pub(crate) fn add(a: Weight, b: Weight) -> Weight {
    (a + b).min(INF)
}

pub(crate) fn to_cost(w: Weight) -> Result<Cost> {
    if w >= INF {
        Ok(Cost::Infinite)
    } else if w > MAX_FINITE as Weight {
        Err(Error::Overflow("tree cost"))
    } else {
        Ok(Cost::Finite(w as u64))
    }
}
