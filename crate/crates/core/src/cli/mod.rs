//! Command-line front end: `solve`, `gen`, `verify` and `bench`.

pub mod bench;
pub mod format;
pub mod gen;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use crate::error::{Error, Result};
use crate::euler::DEFAULT_EXPANSION_LIMIT;
use crate::instance::Instance;
use crate::opttree::DcOptions;
use crate::solvers::{solve, Algorithm, SolverConfig};

use bench::{run_bench, BenchParams};
use format::{emit_instance, emit_solution, parse_instance, parse_solution, SolutionFile};
use gen::{generate, GenParams};
use verify::verify_solution;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Largest city count for which `dp` is the default algorithm.
pub const DP_DEFAULT_MAX_CITIES: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "mvtsp", version, about = "Exact solvers for the many-visits TSP")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and print cost, edges, cycle certificate and tour.
    Solve(SolveArgs),
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Time algorithms on generated instances, CSV to standard output.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum AlgorithmArg {
    Enum,
    EnumGrouped,
    Dp,
    Dc,
    Dc2,
    BrutePsaraftis,
    BrutePermutation,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Enum => Algorithm::Enum,
            AlgorithmArg::EnumGrouped => Algorithm::EnumGrouped,
            AlgorithmArg::Dp => Algorithm::Dp,
            AlgorithmArg::Dc => Algorithm::Dc,
            AlgorithmArg::Dc2 => Algorithm::Dc2,
            AlgorithmArg::BrutePsaraftis => Algorithm::BrutePsaraftis,
            AlgorithmArg::BrutePermutation => Algorithm::BrutePermutation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Defaults to dp up to 12 cities, dc2 above.
    #[arg(long, value_enum)]
    pub algorithm: Option<AlgorithmArg>,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Print the explicit tour only up to this many visits.
    #[arg(long = "expand-threshold", default_value_t = DEFAULT_EXPANSION_LIMIT)]
    pub expand_threshold: u64,
    /// 0 uses all cores, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Subproblem cache for the dc backends.
    #[arg(long, value_enum, default_value_t = Toggle::Off)]
    pub cache: Toggle,
}

impl SolverArgs {
    fn config(&self, n: usize) -> SolverConfig {
        let algorithm = match self.algorithm {
            Some(a) => a.into(),
            None if n <= DP_DEFAULT_MAX_CITIES => Algorithm::Dp,
            None => Algorithm::Dc2,
        };
        SolverConfig {
            algorithm,
            root: self.root,
            expansion_threshold: self.expand_threshold,
            threads: self.threads,
            dc: DcOptions { cache: self.cache == Toggle::On, ..DcOptions::default() },
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Write the solution here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "k-max", default_value_t = 3)]
    pub k_max: u64,
    /// Give every city this multiplicity.
    #[arg(long = "k-fixed")]
    pub k_fixed: Option<u64>,
    #[arg(long = "cost-max", default_value_t = 20)]
    pub cost_max: u64,
    #[arg(long = "inf-prob", default_value_t = 0.1)]
    pub inf_prob: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated list; each instance is solved by all of them.
    #[arg(long = "algorithm", value_enum, value_delimiter = ',', default_value = "dp,dc,dc2")]
    pub algorithms: Vec<AlgorithmArg>,
    #[arg(long = "n-min", default_value_t = 4)]
    pub n_min: usize,
    #[arg(long = "n-max", default_value_t = 7)]
    pub n_max: usize,
    #[arg(long = "k-max", default_value_t = 3)]
    pub k_max: u64,
    #[arg(long = "k-fixed")]
    pub k_fixed: Option<u64>,
    #[arg(long = "cost-max", default_value_t = 20)]
    pub cost_max: u64,
    #[arg(long = "inf-prob", default_value_t = 0.1)]
    pub inf_prob: f64,
    /// First seed; `--seeds` consecutive seeds per n.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, value_enum, default_value_t = Toggle::Off)]
    pub cache: Toggle,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).map_err(|e| match e {
        Error::Parse { line, field, message } => {
            Error::Parse { line, field, message: format!("{message} (in {})", path.display()) }
        }
        other => other,
    })
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<SolutionFile> {
    let inst = load_instance(&args.input)?;
    let cfg = args.solver.config(inst.n());
    info!("{} cities, algorithm {}", inst.n(), cfg.algorithm);
    let sol = SolutionFile::from(&solve(&inst, &cfg)?);
    write_to(args.output.as_deref(), out, &emit_solution(&sol))?;
    Ok(sol)
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<Instance> {
    let inst = generate(&GenParams {
        n: args.n,
        k_max: args.k_max,
        cost_max: args.cost_max,
        inf_prob: args.inf_prob,
        seed: args.seed,
        k_fixed: args.k_fixed,
    })?;
    write_to(args.output.as_deref(), out, &emit_instance(&inst))?;
    Ok(inst)
}

/// Failed checks, one per entry.
pub fn cmd_verify(args: &VerifyArgs) -> Result<Vec<String>> {
    let inst = load_instance(&args.input)?;
    let sol = parse_solution(&read(&args.solution)?)?;
    Ok(verify_solution(&inst, &sol))
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let solver = SolverArgs {
        algorithm: None,
        root: 0,
        expand_threshold: 0,
        threads: args.threads,
        cache: args.cache,
    }
    .config(args.n_min);
    let params = BenchParams {
        algorithms: args.algorithms.iter().map(|&a| a.into()).collect(),
        n_min: args.n_min,
        n_max: args.n_max,
        seeds: (args.seed..args.seed + args.seeds).collect(),
        gen: GenParams {
            n: args.n_min,
            k_max: args.k_max,
            cost_max: args.cost_max,
            inf_prob: args.inf_prob,
            seed: args.seed,
            k_fixed: args.k_fixed,
        },
        solver,
    };
    match &args.output {
        Some(p) => run_bench(&params, fs::File::create(p)?)?,
        None => run_bench(&params, out)?,
    };
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible { .. } => EXIT_INFEASIBLE,
        _ => EXIT_ERROR,
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code; reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out).map(|_| EXIT_OK),
        Command::Gen(a) => cmd_gen(a, out).map(|_| EXIT_OK),
        Command::Bench(a) => cmd_bench(a, out).map(|_| EXIT_OK),
        Command::Verify(a) => cmd_verify(a).map(|failures| {
            for f in &failures {
                let _ = writeln!(err, "FAIL {f}");
            }
            if failures.is_empty() {
                let _ = writeln!(out, "ok");
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        exit_code(&e)
    })
}
