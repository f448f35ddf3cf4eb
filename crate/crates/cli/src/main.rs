//! `cyclo`: verification sweeps, Gauss-sum tables and diagonalizability
//! decisions with deterministic, machine-readable output.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclo_core::Error;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(name = "cyclo", version, about = "Exact Fourier inversion, Gauss sums and group-algebra checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the n-th cyclotomic polynomial.
    Phi {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification sweep and report every check.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Tabulate Gauss sums G(χ, ε_u) for every character mod p^r, r ≤ max-r.
    GaussTable {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        max_r: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Decide strong diagonalizability of Z/m[Z/n] or Z/m[V].
    Diag {
        #[arg(long)]
        modulus: u64,
        #[arg(long, conflicts_with = "group", required_unless_present = "group")]
        n: Option<u64>,
        /// Comma-separated orders of cyclic factors, e.g. 2,2.
        #[arg(long, value_delimiter = ',')]
        group: Option<Vec<u64>>,
        /// Include the verified evaluation matrix of a positive decision.
        #[arg(long)]
        emit_iso: bool,
        /// Confirm the verdict by counting idempotents exhaustively.
        #[arg(long)]
        count_idempotents: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Fourier,
    Gauss,
    Iso,
    CriterionOracle,
    Naturality,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaKind {
    /// 1/p^s ↦ 2, everything else ↦ 1.
    Tpzc,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Largest group order in sweeps [default: 32 for p = 2, 27 for p = 3, p^3 otherwise].
    #[arg(long)]
    pub max_order: Option<u64>,
    /// Largest order of groups in naturality checks [default: 16 for p = 2, 27 for p = 3, p^2 otherwise].
    #[arg(long)]
    pub naturality_order: Option<u64>,
    /// Largest exponent r of the moduli p^r.
    #[arg(long, default_value_t = 3)]
    pub max_r: u32,
    /// Level of the random tables in criterion-oracle.
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Confirmation groups per sample in criterion-oracle.
    #[arg(long, default_value_t = 2)]
    pub extra_groups: usize,
    #[arg(long, value_enum, default_value_t = AlphaKind::Tpzc)]
    pub alpha: AlphaKind,
    /// Embed the matrices of Φ in the report.
    #[arg(long)]
    pub dump_matrix: bool,
    /// Worker threads [default: all cores].
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    ChecksFailed,
    Usage(String),
    Budget(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ChecksFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg} (raise CYCLO_BUDGET to allow it)");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
