//! Divide and conquer over balanced separators of the unknown optimal tree.
//!
//! A subproblem is a list of slots. A slot is either a real city or the hub
//! of a group of aliases, and carries the out/in-degree it must receive.
//! Guessing a split `(V1, V2)` and boundary vertices `B ⊆ V1` removes the
//! crossing degree ("excess") from each `v ∈ B` and hands it to an alias of
//! `v` placed on the `V2` side. With two or more aliases, a hub joins them
//! into a single tree by zero-cost edges and edges among the aliases
//! themselves are forbidden, since they are already connected through `V1`.
//!
//! The hub's edges are oriented by the guess: it points to every alias except
//! the one whose original takes its parent from the `V2` side, which points
//! to the hub instead. Degree counts alone would not fix these directions.
//!
//! Slot distances, in order of precedence:
//! 1. slots sharing a group are never adjacent;
//! 2. a hub and a member of its group are joined at cost 0, in the guessed
//!    direction only;
//! 3. a hub is adjacent to nothing else;
//! 4. otherwise the distance of the underlying cities.
//!
//! Both searches keep at most one candidate per recursion level, so memory
//! stays polynomial. A simple bound (every non-root slot needs its cheapest
//! admissible parent) prunes guesses that cannot beat the incumbent; the
//! lowest-cost guess found first in scan order wins, independently of the
//! budget passed in.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::{add, to_cost, weight, Weight, INF};
use crate::cost::Cost;
use crate::degseq::{distribute, Combinations, DegreeSequence};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::trees::{ceil_log2, DirectedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Single boundary vertex, sides at most `⌈2m/3⌉`.
    Dc,
    /// Up to `⌈log₂ m⌉` boundary vertices, sides at most `⌈m/2⌉`.
    Dc2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DcOptions {
    /// Prune guesses whose lower bound exceeds the incumbent.
    pub bound: bool,
    /// For `Dc2`, use only perfectly balanced guesses. Small subproblems then
    /// may not shrink under every witness split, so results are upper bounds.
    pub pure: bool,
    /// Remember up to `n³` solved subproblems (cleared when full).
    pub cache: bool,
}

impl Default for DcOptions {
    fn default() -> Self {
        DcOptions { bound: true, pure: false, cache: false }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DcStats {
    pub subproblems: u64,
    pub max_depth: u32,
    pub max_slots: usize,
    pub cache_hits: u64,
}

/// What is known about a cached subproblem.
enum Memo {
    Exact(Weight, Edges),
    /// The optimum exceeds this value.
    Above(Weight),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Base {
    Real(u8),
    Hub(u8),
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    base: Base,
    groups: u64,
    /// Groups whose hub this slot points to (rather than receives from).
    up: u64,
    out: u8,
    inn: u8,
}

type Slots = SmallVec<[Slot; 16]>;
type Edges = SmallVec<[(u8, u8); 16]>;

pub struct DivideAndConquer<'a> {
    inst: &'a Instance,
    variant: Variant,
    opts: DcOptions,
    stats: DcStats,
    cache: FxHashMap<Vec<u8>, Memo>,
    capacity: usize,
}

impl<'a> DivideAndConquer<'a> {
    pub fn new(inst: &'a Instance, variant: Variant, opts: DcOptions) -> Self {
        let n = inst.n();
        DivideAndConquer {
            inst,
            variant,
            opts,
            stats: DcStats::default(),
            cache: FxHashMap::default(),
            capacity: n * n * n,
        }
    }

    pub fn stats(&self) -> DcStats {
        self.stats
    }

    pub fn min_tree(&mut self, ds: &DegreeSequence) -> Result<(DirectedTree, Cost)> {
        self.min_tree_within(ds, Cost::Infinite)?
            .ok_or_else(|| Error::InvalidInput("degree sequence has no realization".into()))
    }

    /// The optimal tree for `ds` if its cost is at most `budget`.
    pub fn min_tree_within(
        &mut self,
        ds: &DegreeSequence,
        budget: Cost,
    ) -> Result<Option<(DirectedTree, Cost)>> {
        let n = ds.n();
        if n != self.inst.n() {
            return Err(Error::InvalidInput("degree sequence and instance sizes differ".into()));
        }
        if n >= 64 {
            return Err(Error::Guard("divide and conquer supports at most 63 cities".into()));
        }
        let slots: Slots = (0..n)
            .map(|v| Slot {
                base: Base::Real(v as u8),
                groups: 0,
                up: 0,
                out: ds.out_degree(v) as u8,
                inn: ds.in_degree(v) as u8,
            })
            .collect();
        let Some((w, edges)) = self.search(&slots, 0, weight(budget)) else {
            return Ok(None);
        };
        let edges: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a as usize, b as usize)).collect();
        let tree = DirectedTree::from_edges(n, ds.root(), &edges)?;
        Ok(Some((tree, to_cost(w)?)))
    }

    fn dist(&self, a: &Slot, b: &Slot) -> Option<Weight> {
        if a.groups & b.groups != 0 {
            return None;
        }
        match (a.base, b.base) {
            (Base::Real(x), Base::Real(y)) => Some(weight(self.inst.d(x as usize, y as usize))),
            (Base::Hub(h), _) if (b.groups & !b.up) >> h & 1 == 1 => Some(0),
            (_, Base::Hub(h)) if (a.groups & a.up) >> h & 1 == 1 => Some(0),
            _ => None,
        }
    }

    /// Σ over non-root slots of the cheapest admissible parent; `None` when
    /// some slot has no admissible parent at all.
    fn lower_bound(&self, slots: &[Slot]) -> Option<Weight> {
        let mut total = 0;
        for (j, b) in slots.iter().enumerate() {
            if b.inn == 0 {
                continue;
            }
            let cheapest = slots
                .iter()
                .enumerate()
                .filter(|&(i, a)| i != j && a.out > 0)
                .filter_map(|(_, a)| self.dist(a, b))
                .min()?;
            total = add(total, cheapest);
        }
        Some(total)
    }

    /// The unique tree on at most three slots.
    fn base_case(&self, slots: &[Slot], limit: Weight) -> Option<(Weight, Edges)> {
        let root = slots.iter().position(|s| s.inn == 0)?;
        let mut edges = Edges::new();
        match slots.len() {
            1 => {}
            2 => edges.push((root as u8, 1 - root as u8)),
            3 => {
                let others: SmallVec<[usize; 2]> = (0..3).filter(|&v| v != root).collect();
                if slots[root].out == 2 {
                    edges.push((root as u8, others[0] as u8));
                    edges.push((root as u8, others[1] as u8));
                } else {
                    let (mid, leaf) = if slots[others[0]].out == 1 {
                        (others[0], others[1])
                    } else {
                        (others[1], others[0])
                    };
                    edges.push((root as u8, mid as u8));
                    edges.push((mid as u8, leaf as u8));
                }
            }
            _ => unreachable!(),
        }
        let mut total = 0;
        for &(a, b) in &edges {
            total = add(total, self.dist(&slots[a as usize], &slots[b as usize])?);
        }
        (total <= limit).then_some((total, edges))
    }

    fn search(&mut self, slots: &[Slot], depth: u32, limit: Weight) -> Option<(Weight, Edges)> {
        let m = slots.len();
        self.stats.subproblems += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        self.stats.max_slots = self.stats.max_slots.max(m);
        if m <= 3 {
            return self.base_case(slots, limit);
        }
        if !self.opts.cache {
            return self.explore(slots, depth, limit);
        }
        let key = cache_key(slots);
        match self.cache.get(&key) {
            Some(Memo::Exact(c, edges)) => {
                self.stats.cache_hits += 1;
                return (*c <= limit).then(|| (*c, edges.clone()));
            }
            Some(Memo::Above(bound)) if *bound >= limit => {
                self.stats.cache_hits += 1;
                return None;
            }
            _ => {}
        }
        let found = self.explore(slots, depth, limit);
        if self.cache.len() >= self.capacity {
            self.cache.clear();
        }
        let memo = match &found {
            Some((c, edges)) => Memo::Exact(*c, edges.clone()),
            None => Memo::Above(limit),
        };
        self.cache.insert(key, memo);
        found
    }

    fn explore(&mut self, slots: &[Slot], depth: u32, limit: Weight) -> Option<(Weight, Edges)> {
        let m = slots.len();
        assert!(depth < 64, "recursion deeper than the group mask");

        let mut search = Search { limit, best: None };
        let two_thirds = (2 * m).div_ceil(3);
        let half = m.div_ceil(2);
        let log = ceil_log2(m);
        let wide_allowed = match self.variant {
            Variant::Dc => true,
            Variant::Dc2 => !self.opts.pure && half + log + 1 >= m,
        };
        let narrow_allowed = self.variant == Variant::Dc2;

        let mut v1: SmallVec<[usize; 16]> = SmallVec::new();
        let mut v2: SmallVec<[usize; 16]> = SmallVec::new();
        for mask in 1u64..(1u64 << m) - 1 {
            let s1 = mask.count_ones() as usize;
            let s2 = m - s1;
            let wide = wide_allowed && s1 >= 2 && s1.max(s2) <= two_thirds;
            let narrow = narrow_allowed && s1.max(s2) <= half;
            if !wide && !narrow {
                continue;
            }
            v1.clear();
            v2.clear();
            let (mut sum_out, mut sum_in) = (0i64, 0i64);
            for (i, s) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v1.push(i);
                    sum_out += s.out as i64;
                    sum_in += s.inn as i64;
                } else {
                    v2.push(i);
                }
            }
            let e_out = sum_out - s1 as i64 + 1;
            let e_in = sum_in - s1 as i64 + 1;
            if e_out < 0 || !(0..=1).contains(&e_in) || e_out + e_in == 0 {
                continue;
            }
            let (e_out, e_in) = (e_out as u8, e_in as u8);

            if s2 + 1 < m {
                for &v in &v1 {
                    let split = [(e_out, e_in)];
                    self.try_guess(slots, &v1, &v2, &[v], &split, None, depth, &mut search);
                    if search.limit_exhausted() {
                        return search.best;
                    }
                }
            }

            if !narrow {
                continue;
            }
            let k_max = log.min((e_out + e_in) as usize).min(s1);
            for k in 2..=k_max {
                if s2 + k + 1 >= m {
                    break;
                }
                let mut boundary: SmallVec<[usize; 8]> = SmallVec::new();
                let mut split: SmallVec<[(u8, u8); 8]> = SmallVec::new();
                let mut subsets = Combinations::new(s1, k);
                while let Some(positions) = subsets.advance() {
                    boundary.clear();
                    boundary.extend(positions.iter().map(|&p| v1[p - 1]));
                    let owners = if e_in == 1 { 0..k } else { k..k + 1 };
                    for owner in owners {
                        let owner = (owner < k).then_some(owner);
                        let mut outs = distribute(e_out as usize, k);
                        while let Some(outs) = outs.advance() {
                            split.clear();
                            split.extend(
                                outs.iter()
                                    .enumerate()
                                    .map(|(i, &o)| (o as u8, u8::from(owner == Some(i)))),
                            );
                            if split.iter().any(|&(o, i)| o + i == 0) {
                                continue;
                            }
                            self.try_guess(
                                slots,
                                &v1,
                                &v2,
                                &boundary,
                                &split,
                                Some(owner),
                                depth,
                                &mut search,
                            );
                            if search.limit_exhausted() {
                                return search.best;
                            }
                        }
                    }
                }
            }
        }
        search.best
    }

    /// Evaluates one guess. `hub` is `None` for a single alias without a hub,
    /// otherwise `Some(owner)` where `owner` is the alias whose original
    /// receives its parent from `V2` (the root lies on the `V2` side).
    #[allow(clippy::too_many_arguments)]
    fn try_guess(
        &mut self,
        slots: &[Slot],
        v1: &[usize],
        v2: &[usize],
        boundary: &[usize],
        split: &[(u8, u8)],
        hub: Option<Option<usize>>,
        depth: u32,
        search: &mut Search,
    ) {
        let mut left: Slots = v1.iter().map(|&i| slots[i]).collect();
        for (&b, &(o, i)) in boundary.iter().zip(split) {
            let pos = v1.iter().position(|&x| x == b).expect("boundary lies in V1");
            let s = &mut left[pos];
            if s.out < o || s.inn < i {
                return;
            }
            s.out -= o;
            s.inn -= i;
        }
        if !is_tree_sequence(&left) {
            return;
        }

        let mut right: Slots = v2.iter().map(|&i| slots[i]).collect();
        match hub {
            None => {
                let (o, i) = split[0];
                right.push(Slot { out: o, inn: i, ..slots[boundary[0]] });
            }
            Some(owner) => {
                let bit = 1u64 << depth;
                for (idx, (&b, &(o, i))) in boundary.iter().zip(split).enumerate() {
                    let up = u8::from(owner == Some(idx));
                    let s = slots[b];
                    right.push(Slot {
                        base: s.base,
                        groups: s.groups | bit,
                        up: if up == 1 { s.up | bit } else { s.up },
                        out: o + up,
                        inn: i + 1 - up,
                    });
                }
                let k = boundary.len() as u8;
                let up = u8::from(owner.is_some());
                right.push(Slot {
                    base: Base::Hub(depth as u8),
                    groups: 0,
                    up: 0,
                    out: k - up,
                    inn: up,
                });
            }
        }
        if !is_tree_sequence(&right) {
            return;
        }

        let lb2 = if self.opts.bound {
            let (Some(a), Some(b)) = (self.lower_bound(&left), self.lower_bound(&right)) else {
                return;
            };
            if add(a, b) > search.limit {
                return;
            }
            b
        } else {
            0
        };

        let Some((c1, e1)) = self.search(&left, depth + 1, residual(search.limit, lb2)) else {
            return;
        };
        let Some((c2, e2)) = self.search(&right, depth + 1, residual(search.limit, c1)) else {
            return;
        };
        let total = add(c1, c2);
        if total > search.limit {
            return;
        }

        let s2 = v2.len();
        let mut edges = Edges::new();
        edges.extend(e1.iter().map(|&(a, b)| (v1[a as usize] as u8, v1[b as usize] as u8)));
        let lift = |x: u8| -> Option<u8> {
            let x = x as usize;
            if x < s2 {
                Some(v2[x] as u8)
            } else if x < s2 + boundary.len() {
                Some(boundary[x - s2] as u8)
            } else {
                None
            }
        };
        for &(a, b) in &e2 {
            if let (Some(a), Some(b)) = (lift(a), lift(b)) {
                edges.push((a, b));
            }
        }
        search.accept(total, edges);
    }
}

struct Search {
    /// Accept candidates costing at most this much.
    limit: Weight,
    best: Option<(Weight, Edges)>,
}

impl Search {
    fn accept(&mut self, total: Weight, edges: Edges) {
        debug_assert!(total <= self.limit);
        self.best = Some((total, edges));
        self.limit = total.wrapping_sub(1);
    }

    /// Nothing can beat a zero-cost incumbent.
    fn limit_exhausted(&self) -> bool {
        matches!(self.best, Some((0, _)))
    }
}

fn cache_key(slots: &[Slot]) -> Vec<u8> {
    let mut key = Vec::with_capacity(slots.len() * 19);
    for s in slots {
        key.push(match s.base {
            Base::Real(v) => v,
            Base::Hub(h) => 128 | h,
        });
        key.extend_from_slice(&s.groups.to_le_bytes());
        key.extend_from_slice(&s.up.to_le_bytes());
        key.push(s.out);
        key.push(s.inn);
    }
    key
}

fn residual(limit: Weight, spent: Weight) -> Weight {
    if limit >= INF {
        limit
    } else {
        limit - spent
    }
}

/// Degrees some directed tree realizes: one slot with in-degree 0, all
/// others 1, out-degrees summing to `m - 1`, and a root with out-degree at
/// least 1 unless alone.
fn is_tree_sequence(slots: &[Slot]) -> bool {
    let mut roots = 0;
    let mut root_out = 0;
    let mut sum = 0usize;
    for s in slots {
        match s.inn {
            0 => {
                roots += 1;
                root_out = s.out;
            }
            1 => {}
            _ => return false,
        }
        sum += s.out as usize;
    }
    roots == 1 && sum + 1 == slots.len() && (slots.len() == 1 || root_out >= 1)
}

/// Minimum-cost tree realizing `ds` via single-vertex separators.
pub fn min_tree_dc(ds: &DegreeSequence, inst: &Instance) -> Result<(DirectedTree, Cost)> {
    DivideAndConquer::new(inst, Variant::Dc, DcOptions::default()).min_tree(ds)
}

/// Minimum-cost tree realizing `ds` via perfectly balanced separators.
pub fn min_tree_dc2(ds: &DegreeSequence, inst: &Instance) -> Result<(DirectedTree, Cost)> {
    DivideAndConquer::new(inst, Variant::Dc2, DcOptions::default()).min_tree(ds)
}
