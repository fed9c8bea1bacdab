//! Command-line workbench: reads problem files, runs the analyses and prints
//! tables (stdout) and JSON reports (`--json <path>`).

pub mod commands;
pub mod problem;
pub mod report;

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use strat_euler::equivariant_classes::ClassError;
use strat_euler::group_lattice::GroupError;
use strat_euler::localization::LocalizationError;
use strat_euler::moduli_partition::PartitionError;
use strat_euler::representations::RepresentationError;
use strat_euler::stratification::StratificationError;

pub use problem::{ProblemFile, SCHEMA};

/// Environment variable overriding the fixture directory.
pub const FIXTURES_ENV: &str = "STRAT_EULER_FIXTURES";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Validation(String),
    /// The input is well formed but mathematically inconsistent.
    #[error("inconsistent: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Validation(_) => 3,
            CliError::Inconsistent(_) => 4,
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Validation(e.to_string())
            }
        }
    )*};
}

validation_from!(
    GroupError,
    RepresentationError,
    StratificationError,
    ClassError
);

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        match e {
            PartitionError::Inconsistent { .. } => CliError::Inconsistent(e.to_string()),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<LocalizationError> for CliError {
    fn from(e: LocalizationError) -> Self {
        match e {
            LocalizationError::PoleCancellation { .. } => CliError::Inconsistent(e.to_string()),
            e => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "strat-euler",
    version,
    about = "Stratified Euler-class workbench for circle and cyclic actions"
)]
pub struct Cli {
    /// Write the machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Suppress the human-readable output.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit-type stratification of the base.
    Stratify { file: String },
    /// Fixed / obstruction ranks of the bundle on every stratum.
    Partition { file: String },
    /// Partition table, coindex and verdict.
    Coindex { file: String },
    /// Full feasibility report with the dimension table and cycle check.
    Feasibility { file: String },
    /// Localized integrals of the requested classes.
    Localize { file: String },
    /// Intersection numbers compared against the fixed-locus formula.
    Intersect {
        file: String,
        #[arg(long, requires = "beta")]
        alpha: Option<String>,
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
    },
    /// Generators of equivariant polynomial maps.
    Covariants {
        /// `Z<m>`, `e` or `S1`.
        #[arg(long)]
        group: String,
        /// Weights of the source representation.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<i64>,
        /// Weights of the target summands.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        target: Vec<i64>,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Validates a problem file and runs every analysis it supports.
    Check { file: String },
}

/// Outcome of a command: text for stdout and the JSON report.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: String,
}

pub fn fixture_dir() -> PathBuf {
    match env::var_os(FIXTURES_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

/// Resolves a problem path: an existing file wins, otherwise the name is
/// looked up in the fixture directory (`fixtures/` prefix and `.json`
/// extension optional).
pub fn resolve(name: &str) -> PathBuf {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return direct;
    }
    let stem = name.strip_prefix("fixtures/").unwrap_or(name);
    let dir = fixture_dir();
    let candidate = dir.join(stem);
    if candidate.is_file() {
        return candidate;
    }
    dir.join(format!("{stem}.json"))
}

pub fn load(name: &str) -> Result<ProblemFile, CliError> {
    let path = resolve(name);
    let text = fs::read_to_string(&path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    problem::parse(&text)
}

/// Runs a parsed command line without touching stdout or the JSON path.
pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Stratify { file } => commands::stratify(&load(file)?),
        Command::Partition { file } => commands::partition(&load(file)?),
        Command::Coindex { file } => commands::coindex(&load(file)?),
        Command::Feasibility { file } => commands::feasibility(&load(file)?),
        Command::Localize { file } => commands::localize(&load(file)?),
        Command::Intersect { file, alpha, beta } => {
            let pair = alpha.clone().zip(beta.clone());
            commands::intersect(&load(file)?, pair)
        }
        Command::Covariants {
            group,
            weights,
            target,
            bound,
        } => commands::covariants(group, weights, target, *bound),
        Command::Check { file } => commands::check(&load(file)?),
    }
}

/// Full CLI behaviour; returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut impl std::io::Write, stderr: &mut impl std::io::Write) -> i32 {
    let result = execute(&cli.command).and_then(|out| {
        if let Some(path) = &cli.json {
            fs::write(path, &out.json).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            if !cli.quiet {
                let _ = write!(stdout, "{}", out.text);
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
