//! `strsel`: generate, reduce, solve and verify string selection instances.
//!
//! Results go to standard output as `key=value` lines. Exit status is 0 on
//! success, 1 when a verification fails, and 2 on usage, input or parse
//! errors.

mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "strsel",
    version,
    about = "String selection problems with outliers"
)]
struct Cli {
    /// Append wall-clock time (`wall_ms=`) to the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random 2-CNF formula, distinct variables in every clause.
    GenMax2sat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random simple graph, each edge present with probability `p`.
    GenGraph {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a string instance and certificate from a source instance.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Solve an instance file.
    Solve(SolveArgs),
    /// Exact self-checks on a single input.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Exhaustive and randomized experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Decide whether some center is within `d` of `k` strings, using one
    /// approximation-oracle call.
    DecideCks {
        #[arg(short, long)]
        file: PathBuf,
        #[arg(long)]
        d: usize,
        /// `exact`, `inflate` or `inflate:<seed>`.
        #[arg(long, default_value = "exact")]
        oracle: String,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceCommand {
    /// Max-2-SAT formula to a Close to Most Strings instance.
    Sat2cms {
        #[arg(short, long)]
        file: PathBuf,
        /// Fixing strings per clause.
        #[arg(long, default_value_t = strsel::reductions::DEFAULT_C)]
        c: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Densest-k-Subgraph to a Most Strings with Few Bad Columns instance.
    Dks2msfbc {
        #[arg(short, long)]
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Problem {
    Cms,
    Ffms,
    Cks,
    Msfbc,
    Max2sat,
    Dks,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Exact,
    Local,
    Subsets,
    Columns,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Start {
    Input,
    Random,
    Canonical,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(value_enum)]
    problem: Problem,
    #[arg(long, value_enum, default_value = "exact")]
    algo: Algo,
    #[arg(short, long)]
    file: PathBuf,
    /// Subgraph size (dks only).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[arg(long, default_value_t = 10_000)]
    iterations: usize,
    #[arg(long, value_enum, default_value = "input")]
    start: Start,
    /// Re-score the returned solution and fail if it disagrees.
    #[arg(long)]
    recheck: bool,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Solve both sides of the Densest-k-Subgraph reduction and check that
    /// the string optimum is one more than the graph optimum.
    ClaimOptval {
        #[arg(short, long)]
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Largest reduced instance (edges + 1) the subset search accepts.
        #[arg(long, default_value_t = 32)]
        max_strings: usize,
    },
    /// Check the per-assignment coverage identity and fixing distances of the
    /// Max-2-SAT reduction over every assignment.
    CoverageIdentity {
        #[arg(short, long)]
        file: PathBuf,
        #[arg(long, default_value_t = strsel::reductions::DEFAULT_C)]
        c: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check that the Close to Most Strings optimum at `d` equals the Far
    /// from Most Strings optimum at `ℓ − d` (binary instances).
    CmsDuality {
        #[arg(short, long)]
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ExperimentCommand {
    /// Repeated fixing-string trials against the `0.9^n` failure bound.
    FixingLemma {
        #[arg(long)]
        n: usize,
        /// Clause count; defaults to `n`.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = strsel::reductions::DEFAULT_C)]
        c: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// One line per failing trial.
        #[arg(long)]
        detail: bool,
    },
    /// Exact minimum far-fixing fraction over non-canonical words.
    QuarterBound {
        #[arg(long)]
        n: usize,
    },
    /// Exact minimum far-fixing fraction conditioned on one mismatched block.
    HalfBound {
        #[arg(long)]
        n: usize,
    },
    /// Integer and log-space checks of the constants behind the reduction.
    Inequalities {
        #[arg(long, default_value_t = strsel::reductions::DEFAULT_C)]
        c: usize,
        /// Largest clause count in the grid.
        #[arg(long, default_value_t = 10_000)]
        m: usize,
        /// One line per failed check.
        #[arg(long)]
        detail: bool,
    },
    /// Retry the randomized reduction until an exact solver returns a
    /// canonical center.
    LasVegas {
        /// Formula to use for every run; random formulas otherwise.
        #[arg(short, long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = strsel::reductions::DEFAULT_C)]
        c: usize,
        /// Number of runs.
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Cap on reduction attempts per run.
        #[arg(long, default_value_t = strsel::experiments::DEFAULT_TRIAL_CAP)]
        max_trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// One line per run.
        #[arg(long)]
        detail: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    commands::run(cli)
}
