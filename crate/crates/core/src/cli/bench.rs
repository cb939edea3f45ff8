//! Timing harness: one CSV row per (algorithm, instance).

use std::io::Write;
use std::time::Instant;

use log::warn;

use crate::error::{Error, Result};
use crate::memprobe;
use crate::solvers::{solve, Algorithm, SolverConfig};

use super::gen::{generate, GenParams};

pub const COLUMNS: [&str; 7] = ["algorithm", "n", "k_max", "seed", "wall_ms", "peak_bytes", "cost"];

#[derive(Debug, Clone)]
pub struct BenchParams {
    pub algorithms: Vec<Algorithm>,
    pub n_min: usize,
    pub n_max: usize,
    pub seeds: Vec<u64>,
    /// Generator settings; `n` and `seed` are overwritten per row group.
    pub gen: GenParams,
    pub solver: SolverConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub k_max: u64,
    pub seed: u64,
    pub wall_ms: f64,
    /// Zero when no counting allocator is installed.
    pub peak_bytes: usize,
    /// `infeasible` or the solver error text when no tour was produced.
    pub cost: String,
}

/// Runs every algorithm on every generated instance and writes the CSV.
/// Fails if two algorithms disagree on the cost of one instance.
pub fn run_bench<W: Write>(p: &BenchParams, out: W) -> Result<Vec<BenchRow>> {
    let mut csv = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    csv.write_record(COLUMNS).map_err(io)?;
    let mut rows = Vec::new();
    for n in p.n_min..=p.n_max {
        for &seed in &p.seeds {
            let inst = generate(&GenParams { n, seed, ..p.gen })?;
            let k_max = inst.multiplicities().iter().copied().max().unwrap_or(0);
            let mut group_cost: Option<String> = None;
            for &algorithm in &p.algorithms {
                let cfg = SolverConfig { algorithm, ..p.solver };
                let start = Instant::now();
                let (result, peak_bytes) = memprobe::measure(|| solve(&inst, &cfg));
                let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                let cost = match result {
                    Ok(sol) => sol.cost.to_string(),
                    Err(Error::Infeasible { .. }) => "infeasible".into(),
                    Err(e) => {
                        warn!("{algorithm} on n={n} seed={seed}: {e}");
                        format!("error: {e}")
                    }
                };
                let comparable = !cost.starts_with("error");
                match &group_cost {
                    Some(c) if comparable && *c != cost => {
                        return Err(Error::InvalidInput(format!(
                            "cost disagreement at n={n} seed={seed}: {c} vs {cost} from {algorithm}"
                        )));
                    }
                    None if comparable => group_cost = Some(cost.clone()),
                    _ => {}
                }
                let row = BenchRow { algorithm, n, k_max, seed, wall_ms, peak_bytes, cost };
                csv.write_record([
                    row.algorithm.name().to_string(),
                    row.n.to_string(),
                    row.k_max.to_string(),
                    row.seed.to_string(),
                    format!("{:.3}", row.wall_ms),
                    row.peak_bytes.to_string(),
                    row.cost.clone(),
                ])
                .map_err(io)?;
                csv.flush()?;
                rows.push(row);
            }
        }
    }
    Ok(rows)
}
