//! `sbm` — reproducible pipelines around the bifurcation solver: generate
//! instances, solve them, certify ground energies, run the benchmark
//! protocol, and fit scaling exponents.
//!
//! Every command prints a JSON document to standard output whose `manifest`
//! field records the resolved parameters, seeds, and input digests; errors
//! go to standard error with a nonzero exit status. Optimality gaps are
//! given in percent on the command line and converted to fractions at this
//! boundary — everything below the CLI works in fractions.

mod cmd_bench;
mod cmd_fit;
mod cmd_generate;
mod cmd_oracle;
mod cmd_solve;
mod manifest;

use std::path::PathBuf;

use anyhow::{ensure, Context, Result};
use bench_harness::{GridSpec, ReferencePolicy, TimingVariant};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sbm_engine::SbmParams;

use cmd_bench::BenchConfig;
use cmd_fit::FitConfig;

/// Environment variable supplying the default worker count.
const WORKERS_ENV: &str = "SBM_WORKERS";

#[derive(Parser)]
#[command(
    name = "sbm",
    version,
    about = "Ising/QUBO solving and time-to-epsilon benchmarking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random coupling instances on a graph topology
    Generate {
        /// Graph topology
        #[arg(long, value_enum, default_value_t = GraphArg::King)]
        graph: GraphArg,
        /// Comma-separated sizes: king's-graph side lengths (N = side²) or
        /// complete-graph spin counts
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Instances per size
        #[arg(long, default_value_t = 125)]
        count: u32,
        /// Master seed for coupling draws
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory for instance files
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one instance and print the outcome as JSON
    Solve {
        /// Instance file
        instance: PathBuf,
        /// Integration steps per replica (N_s)
        #[arg(long, default_value_t = 1000)]
        steps: u32,
        /// Independent replicas per solve (N_r)
        #[arg(long, default_value_t = 32)]
        replicas: u32,
        #[command(flatten)]
        dynamics: DynamicsArgs,
    },
    /// Certify an instance's ground energy by exhaustive enumeration
    Oracle {
        /// Instance file; rewritten with the certified energy in its header
        instance: PathBuf,
    },
    /// Benchmark a directory of instances: grid search and TTε medians
    Bench {
        /// Directory of instance files (*.txt)
        instance_dir: PathBuf,
        /// Optimality gaps in percent
        #[arg(long = "eps", value_delimiter = ',', default_values_t = vec![0.75, 1.00, 1.10, 1.25])]
        eps: Vec<f64>,
        /// Independent runs per (instance, grid cell)
        #[arg(long, default_value_t = 100)]
        runs: u32,
        /// Step counts (N_s) the grid search tries
        #[arg(long, value_delimiter = ',')]
        grid_steps: Option<Vec<u32>>,
        /// Replica counts (N_r) the grid search tries
        #[arg(long, value_delimiter = ',')]
        grid_replicas: Option<Vec<u32>>,
        /// Clock the grid search minimizes
        #[arg(long, value_enum, default_value_t = TimingArg::Total)]
        timing: TimingArg,
        /// Where reference energies come from
        #[arg(long, value_enum, default_value_t = ReferenceArg::Metadata)]
        reference: ReferenceArg,
        /// Output directory; each bench creates a timestamped subdirectory
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        dynamics: DynamicsArgs,
    },
    /// Fit power laws to a median table
    Fit {
        /// Median table CSV (solver,n,epsilon,median,std)
        medians: PathBuf,
        /// Solver name to fit (default: the table's only solver)
        #[arg(long)]
        solver: Option<String>,
        /// Gaps to fit, in percent (default: every gap in the table)
        #[arg(long = "eps", value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        /// Inclusive size range MIN,MAX used for the fit
        #[arg(long, value_parser = parse_range)]
        range: Option<(f64, f64)>,
        /// Weight points by their bootstrap uncertainties
        #[arg(long)]
        weighted: bool,
        /// Also write fits.json and per-gap curve CSVs here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Dynamics parameters shared by `solve` and `bench`.
#[derive(Args, Debug, Clone)]
struct DynamicsArgs {
    /// Worker threads per solve (default: SBM_WORKERS, then 1)
    #[arg(long)]
    workers: Option<usize>,
    /// Master seed for all random streams
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lower edge of the per-replica time-step range
    #[arg(long, default_value_t = 0.25)]
    dt_min: f64,
    /// Upper edge of the per-replica time-step range
    #[arg(long, default_value_t = 1.5)]
    dt_max: f64,
    /// Override the derived coupling-strength prefactor
    #[arg(long)]
    c0: Option<f64>,
}

impl DynamicsArgs {
    /// Resolves to engine parameters (steps and replicas still at their
    /// defaults; callers override them per use).
    fn base_params(&self) -> Result<SbmParams> {
        Ok(SbmParams {
            c0_override: self.c0,
            dt_range: (self.dt_min, self.dt_max),
            seed: self.seed,
            n_workers: resolve_workers(self.workers)?,
            ..SbmParams::default()
        })
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum GraphArg {
    /// King's-move lattice on a square grid
    King,
    /// All-to-all couplings
    Complete,
}

impl GraphArg {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphArg::King => "king",
            GraphArg::Complete => "complete",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum TimingArg {
    /// Whole solve call wall-clock
    Total,
    /// Replica-loop compute clock
    Compute,
}

impl From<TimingArg> for TimingVariant {
    fn from(arg: TimingArg) -> Self {
        match arg {
            TimingArg::Total => TimingVariant::Total,
            TimingArg::Compute => TimingVariant::Compute,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ReferenceArg {
    /// Certified ground energies from instance metadata
    Metadata,
    /// Lowest energy any run found, per instance
    BestFound,
}

impl From<ReferenceArg> for ReferencePolicy {
    fn from(arg: ReferenceArg) -> Self {
        match arg {
            ReferenceArg::Metadata => ReferencePolicy::Metadata,
            ReferenceArg::BestFound => ReferencePolicy::BestFound,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("output serializes");
            use std::io::Write;
            if let Err(err) = writeln!(std::io::stdout().lock(), "{text}") {
                // A closed pipe downstream (e.g. `sbm ... | head`) is not an
                // error; anything else still is.
                if err.kind() == std::io::ErrorKind::BrokenPipe {
                    std::process::exit(0);
                }
                eprintln!("error: cannot write output: {err}");
                std::process::exit(1);
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn run(command: Command) -> Result<serde_json::Value> {
    match command {
        Command::Generate {
            graph,
            sizes,
            count,
            seed,
            out,
        } => cmd_generate::cmd_generate(graph, &sizes, count, seed, &out),
        Command::Solve {
            instance,
            steps,
            replicas,
            dynamics,
        } => {
            let params = SbmParams {
                n_steps: steps,
                n_replicas: replicas,
                ..dynamics.base_params()?
            };
            cmd_solve::cmd_solve(&instance, params)
        }
        Command::Oracle { instance } => cmd_oracle::cmd_oracle(&instance),
        Command::Bench {
            instance_dir,
            eps,
            runs,
            grid_steps,
            grid_replicas,
            timing,
            reference,
            out,
            dynamics,
        } => {
            let defaults = GridSpec::default();
            let config = BenchConfig {
                instance_dir,
                out_dir: out,
                epsilons: eps.iter().map(|&p| fraction_from_percent(p)).collect(),
                n_runs: runs,
                grid: GridSpec {
                    n_steps: grid_steps.unwrap_or(defaults.n_steps),
                    n_replicas: grid_replicas.unwrap_or(defaults.n_replicas),
                },
                timing: timing.into(),
                reference: reference.into(),
                base: dynamics.base_params()?,
            };
            cmd_bench::cmd_bench(&config)
        }
        Command::Fit {
            medians,
            solver,
            eps,
            range,
            weighted,
            out,
        } => {
            let config = FitConfig {
                medians,
                solver,
                epsilons: eps.map(|list| list.iter().map(|&p| fraction_from_percent(p)).collect()),
                range,
                weighted,
                out,
            };
            cmd_fit::cmd_fit(&config)
        }
    }
}

/// Percent → fraction, the single place the CLI's percent convention is
/// converted. `bench` and `fit` share it, so a gap benchmarked as `--eps
/// 1.25` is stored and later looked up under the identical fraction.
fn fraction_from_percent(percent: f64) -> f64 {
    percent / 100.0
}

/// Worker-count resolution: explicit flag, then the SBM_WORKERS
/// environment variable, then 1.
fn resolve_workers(flag: Option<usize>) -> Result<usize> {
    let workers = match flag {
        Some(w) => w,
        None => match std::env::var(WORKERS_ENV) {
            Ok(text) => text
                .trim()
                .parse::<usize>()
                .with_context(|| format!("{WORKERS_ENV} must be a positive integer, got `{text}`"))?,
            Err(_) => 1,
        },
    };
    ensure!(workers >= 1, "worker count must be at least 1");
    Ok(workers)
}

/// Parses `MIN,MAX` into an inclusive size range.
fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let (min, max) = text
        .split_once(',')
        .ok_or_else(|| "expected MIN,MAX".to_string())?;
    let min: f64 = min.trim().parse().map_err(|_| format!("bad number `{min}`"))?;
    let max: f64 = max.trim().parse().map_err(|_| format!("bad number `{max}`"))?;
    if !(min.is_finite() && max.is_finite() && min <= max) {
        return Err(format!("invalid range [{min}, {max}]"));
    }
    Ok((min, max))
}
