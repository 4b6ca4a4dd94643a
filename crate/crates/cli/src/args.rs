//! Command-line grammar.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use tropvertex::scattering::Ordering;
use tropvertex::Mode;

use crate::{parse_problem, CliError, Command, JobSpec, DEFAULT_ORDER, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "tropvertex",
    version,
    about = "Scattering factorizations and refined tropical counts, computed exactly"
)]
struct Cli {
    /// Recompute even if a cached result exists.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for tropical enumeration.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Base seed for constraint configurations.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON document here instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Factor the commutator of S_{l1} and T_{l2} into slope-ordered walls.
    Scatter {
        #[arg(long)]
        l1: i64,
        #[arg(long)]
        l2: i64,
        #[arg(long, default_value_t = Mode::Commutative)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
        #[arg(long, default_value_t = Ordering::default())]
        ordering: Ordering,
    },
    /// Classical and refined tropical invariants, checked over several configurations.
    Count {
        #[command(flatten)]
        problem: ProblemArg,
        /// Number of configurations (seeds seed, seed+1, ...).
        #[arg(long, default_value_t = 5)]
        seeds: u64,
    },
    /// Welschinger spectrum read off the refined invariant.
    Spectrum {
        #[command(flatten)]
        problem: ProblemArg,
    },
    /// Value at q = -1, compared with the per-curve closed form.
    MinusOne {
        #[command(flatten)]
        problem: ProblemArg,
    },
    /// Run the full verification suite.
    Verify,
}

#[derive(Debug, Args)]
struct ProblemArg {
    /// JSON object {a, b, k, alpha, alpha_prime}; keys may be unquoted.
    #[arg(long)]
    problem: String,
}

#[derive(Debug)]
pub enum ArgsError {
    Clap(clap::Error),
    Cli(CliError),
}

/// Parses `argv` (including the program name) into a validated job.
pub fn parse<I, T>(argv: I) -> Result<JobSpec, ArgsError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ArgsError::Clap)?;
    let seed = cli.seed;
    let problem = |p: &ProblemArg| parse_problem(&p.problem).map_err(ArgsError::Cli);
    let command = match &cli.command {
        Sub::Scatter { l1, l2, mode, order, ordering } => {
            Command::Scatter { l1: *l1, l2: *l2, mode: *mode, order: *order, ordering: *ordering }
        }
        Sub::Count { problem: p, seeds } => Command::Count { problem: problem(p)?, seed, seeds: *seeds },
        Sub::Spectrum { problem: p } => Command::Spectrum { problem: problem(p)?, seed },
        Sub::MinusOne { problem: p } => Command::MinusOne { problem: problem(p)?, seed },
        Sub::Verify => Command::Verify,
    };
    let spec = JobSpec { command, output: cli.output, use_cache: !cli.no_cache, jobs: cli.jobs };
    spec.validate().map_err(ArgsError::Cli)?;
    Ok(spec)
}
