//! Top-level MV-TSP solvers.
//!
//! The tree-based solvers rest on one decomposition: every tour's edge
//! multiset splits into a spanning tree rooted at any fixed city plus a
//! completion whose degrees are fixed by the tree's degree sequence. For each
//! feasible degree sequence the cheapest completion is a transportation
//! problem and the cheapest tree comes from a tree backend; the best sum over
//! all sequences is optimal.

mod brute;

pub use brute::{
    brute_permutation, brute_permutation_tour, brute_psaraftis, brute_psaraftis_tour,
    PERMUTATION_MAX_LENGTH, PSARAFTIS_MAX_CELLS, PSARAFTIS_MAX_STATES,
};

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use log::{debug, info};

use crate::cost::Cost;
use crate::degseq::{enumerate_feasible, DegreeSequence};
use crate::error::{Error, Result};
use crate::euler::{cycle_certificate, eulerian_expand, walk_multigraph, DEFAULT_EXPANSION_LIMIT};
use crate::instance::Instance;
use crate::multigraph::DirectedMultigraph;
use crate::opttree::{DcOptions, DivideAndConquer, DpTable, Variant};
use crate::par;
use crate::transport::{solve_transport, TransportProblem, TransportSolution};
use crate::trees::{enumerate_trees, DirectedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Every tree of every degree sequence, one completion per tree.
    Enum,
    /// Cheapest tree per degree sequence by enumeration, one completion each.
    EnumGrouped,
    Dp,
    Dc,
    Dc2,
    BrutePsaraftis,
    BrutePermutation,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Enum,
        Algorithm::EnumGrouped,
        Algorithm::Dp,
        Algorithm::Dc,
        Algorithm::Dc2,
        Algorithm::BrutePsaraftis,
        Algorithm::BrutePermutation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Enum => "enum",
            Algorithm::EnumGrouped => "enum_grouped",
            Algorithm::Dp => "dp",
            Algorithm::Dc => "dc",
            Algorithm::Dc2 => "dc2",
            Algorithm::BrutePsaraftis => "brute_psaraftis",
            Algorithm::BrutePermutation => "brute_permutation",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Root of the spanning trees; any city gives the same optimum.
    pub root: usize,
    /// Expand the tour explicitly only up to this many visits.
    pub expansion_threshold: u64,
    /// 0: default pool, 1: sequential, t: dedicated pool of t threads.
    pub threads: usize,
    pub dc: DcOptions,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::Dp,
            root: 0,
            expansion_threshold: DEFAULT_EXPANSION_LIMIT,
            threads: 0,
            dc: DcOptions::default(),
        }
    }
}

impl SolverConfig {
    pub fn with_algorithm(algorithm: Algorithm) -> Self {
        SolverConfig { algorithm, ..Default::default() }
    }
}

/// The tree/completion split behind a tree-based solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub tree: DirectedTree,
    pub tree_cost: Cost,
    pub completion: TransportSolution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourSolution {
    pub cost: Cost,
    pub edges: DirectedMultigraph,
    /// Explicit visit sequence starting at city 0, when short enough.
    pub expansion: Option<Vec<usize>>,
    /// Simple cycles with repetition counts whose union is `edges`.
    pub cycles: Vec<(Vec<usize>, u64)>,
    pub certificate: Option<Certificate>,
}

impl TourSolution {
    fn from_edges(
        inst: &Instance,
        edges: DirectedMultigraph,
        expansion: Option<Vec<usize>>,
        certificate: Option<Certificate>,
        threshold: u64,
    ) -> Result<Self> {
        let cost = edges.cost(inst)?;
        let expansion = match expansion {
            Some(seq) if seq.len() as u64 <= threshold => Some(seq),
            Some(_) => None,
            None if edges.total_edges() <= threshold => {
                Some(eulerian_expand(&edges, 0, threshold)?)
            }
            None => None,
        };
        let cycles = cycle_certificate(&edges)?;
        Ok(TourSolution { cost, edges, expansion, cycles, certificate })
    }
}

pub fn solve(inst: &Instance, cfg: &SolverConfig) -> Result<TourSolution> {
    let n = inst.n();
    if cfg.root >= n {
        return Err(Error::InvalidInput(format!("root {} out of range for {n} cities", cfg.root)));
    }
    info!("solving n={n} with {}", cfg.algorithm);
    match cfg.algorithm {
        Algorithm::BrutePsaraftis | Algorithm::BrutePermutation => {
            let (cost, seq) = if cfg.algorithm == Algorithm::BrutePsaraftis {
                brute_psaraftis_tour(inst)?
            } else {
                brute_permutation_tour(inst)?
            };
            if !cost.is_finite() {
                return Err(Error::Infeasible { lower_bound: Cost::Infinite });
            }
            let edges = walk_multigraph(n, &seq)?;
            TourSolution::from_edges(inst, edges, Some(seq), None, cfg.expansion_threshold)
        }
        _ if n == 1 => {
            let mut edges = DirectedMultigraph::new(1);
            edges.add_edge(0, 0, inst.multiplicity(0))?;
            if !edges.cost(inst)?.is_finite() {
                return Err(Error::Infeasible { lower_bound: Cost::Infinite });
            }
            TourSolution::from_edges(inst, edges, None, None, cfg.expansion_threshold)
        }
        Algorithm::Enum => solve_enum(inst, false, cfg),
        Algorithm::EnumGrouped => solve_enum(inst, true, cfg),
        Algorithm::Dp | Algorithm::Dc | Algorithm::Dc2 => solve_trees(inst, cfg),
    }
}

/// Whether a tree with this degree sequence can sit inside some tour.
fn fits(ds: &DegreeSequence, inst: &Instance) -> bool {
    (0..ds.n()).all(|v| {
        ds.out_degree(v) as u64 <= inst.multiplicity(v)
            && ds.in_degree(v) as u64 <= inst.multiplicity(v)
    })
}

fn completion(inst: &Instance, ds: &DegreeSequence) -> Result<Option<TransportSolution>> {
    let supply = (0..ds.n()).map(|v| inst.multiplicity(v) - ds.out_degree(v) as u64).collect();
    let demand = (0..ds.n()).map(|v| inst.multiplicity(v) - ds.in_degree(v) as u64).collect();
    let problem = TransportProblem::new(supply, demand, inst.costs())?;
    match solve_transport(&problem) {
        Ok(sol) => {
            debug_assert!(sol.check_certificate(&problem));
            Ok(Some(sol))
        }
        Err(Error::NoCompletion) => Ok(None),
        Err(e) => Err(e),
    }
}

struct Candidate {
    total: Cost,
    tree: DirectedTree,
    tree_cost: Cost,
    completion: TransportSolution,
}

/// Cheapest finite total seen so far, shared across workers for pruning.
struct Incumbent(AtomicU64);

impl Incumbent {
    fn new() -> Self {
        Incumbent(AtomicU64::new(u64::MAX))
    }

    fn get(&self) -> Cost {
        match self.0.load(Ordering::Relaxed) {
            u64::MAX => Cost::Infinite,
            v => Cost::Finite(v),
        }
    }

    fn offer(&self, c: Cost) {
        if let Cost::Finite(v) = c {
            self.0.fetch_min(v, Ordering::Relaxed);
        }
    }

    /// Largest tree cost that could still tie the incumbent after paying
    /// `completion`, or `None` when the completion alone is already worse.
    fn tree_budget(&self, completion: Cost) -> Option<Cost> {
        match (self.get(), completion) {
            (Cost::Infinite, _) => Some(Cost::Infinite),
            (Cost::Finite(best), Cost::Finite(x)) => best.checked_sub(x).map(Cost::Finite),
            (Cost::Finite(_), Cost::Infinite) => None,
        }
    }
}

fn finish(
    inst: &Instance,
    cfg: &SolverConfig,
    best: Option<Candidate>,
    lower_bound: Cost,
) -> Result<TourSolution> {
    let Some(best) = best.filter(|c| c.total.is_finite()) else {
        return Err(Error::Infeasible { lower_bound });
    };
    let edges = best.tree.to_multigraph().sum(&best.completion.flow)?;
    let certificate =
        Certificate { tree: best.tree, tree_cost: best.tree_cost, completion: best.completion };
    let sol =
        TourSolution::from_edges(inst, edges, None, Some(certificate), cfg.expansion_threshold)?;
    debug_assert_eq!(sol.cost, best.total);
    Ok(sol)
}

/// Smallest completion cost over sequences with a completion: no tour can be
/// cheaper, even when every tree turned out infinite.
struct LowerBound(AtomicU64);

impl LowerBound {
    fn new() -> Self {
        LowerBound(AtomicU64::new(u64::MAX))
    }

    fn offer(&self, c: Cost) {
        if let Cost::Finite(v) = c {
            self.0.fetch_min(v, Ordering::Relaxed);
        }
    }

    fn get(&self) -> Cost {
        match self.0.load(Ordering::Relaxed) {
            u64::MAX => Cost::Infinite,
            v => Cost::Finite(v),
        }
    }
}

enum Backend<'a> {
    Dp(DpTable<'a>),
    Dc(DivideAndConquer<'a>),
}

/// Tree backend driver: one optimal tree and one completion per sequence.
fn solve_trees(inst: &Instance, cfg: &SolverConfig) -> Result<TourSolution> {
    let incumbent = Incumbent::new();
    let lower = LowerBound::new();
    let init = || match cfg.algorithm {
        Algorithm::Dp => DpTable::new(inst, cfg.root).map(Backend::Dp),
        Algorithm::Dc => Ok(Backend::Dc(DivideAndConquer::new(inst, Variant::Dc, cfg.dc))),
        _ => Ok(Backend::Dc(DivideAndConquer::new(inst, Variant::Dc2, cfg.dc))),
    };
    // Surface configuration errors (e.g. dp size limit) before fanning out.
    init()?;
    let eval = |backend: &mut Result<Backend>, idx: usize, ds: DegreeSequence| {
        let backend = backend.as_mut().map_err(|e| e.clone())?;
        if !fits(&ds, inst) {
            return Ok(None);
        }
        let Some(x) = completion(inst, &ds)? else {
            return Ok(None);
        };
        lower.offer(x.cost);
        let Some(budget) = incumbent.tree_budget(x.cost) else {
            return Ok(None);
        };
        let found = match backend {
            Backend::Dp(table) => Some(table.min_tree(&ds)?),
            Backend::Dc(search) => search.min_tree_within(&ds, budget)?,
        };
        let Some((tree, tree_cost)) = found else {
            return Ok(None);
        };
        let total = tree_cost.checked_add(x.cost)?;
        incumbent.offer(total);
        debug!("sequence {idx}: tree {tree_cost} + completion {} = {total}", x.cost);
        Ok(Some(Candidate { total, tree, tree_cost, completion: x }))
    };
    let best = par::min_by_key(
        cfg.threads,
        enumerate_feasible(inst.n(), cfg.root),
        init,
        eval,
        |c: &Candidate| c.total,
    )?;
    finish(inst, cfg, best, lower.get())
}

/// Tree enumeration solver. Ungrouped, every tree gets its own completion;
/// grouped, the completion is solved once per degree sequence and paired with
/// the cheapest tree.
pub fn solve_enum(inst: &Instance, grouped: bool, cfg: &SolverConfig) -> Result<TourSolution> {
    if inst.n() == 1 || cfg.root >= inst.n() {
        let algorithm = if grouped { Algorithm::EnumGrouped } else { Algorithm::Enum };
        return solve(inst, &SolverConfig { algorithm, ..*cfg });
    }
    let lower = LowerBound::new();
    let eval = |_: &mut (), _: usize, ds: DegreeSequence| -> Result<Option<Candidate>> {
        if !fits(&ds, inst) {
            return Ok(None);
        }
        let mut best: Option<Candidate> = None;
        if grouped {
            let Some(x) = completion(inst, &ds)? else {
                return Ok(None);
            };
            lower.offer(x.cost);
            for (tree, tree_cost) in enumerate_trees(&ds, inst) {
                if best.as_ref().is_none_or(|b| tree_cost < b.tree_cost) {
                    let total = tree_cost.checked_add(x.cost)?;
                    best = Some(Candidate { total, tree, tree_cost, completion: x.clone() });
                }
            }
        } else {
            for (tree, tree_cost) in enumerate_trees(&ds, inst) {
                let Some(x) = completion(inst, &tree.degree_sequence()?)? else {
                    return Ok(None);
                };
                lower.offer(x.cost);
                let total = tree_cost.checked_add(x.cost)?;
                if best.as_ref().is_none_or(|b| total < b.total) {
                    best = Some(Candidate { total, tree, tree_cost, completion: x });
                }
            }
        }
        Ok(best)
    };
    let best = par::min_by_key(
        cfg.threads,
        enumerate_feasible(inst.n(), cfg.root),
        || (),
        eval,
        |c: &Candidate| c.total,
    )?;
    finish(inst, cfg, best, lower.get())
}
