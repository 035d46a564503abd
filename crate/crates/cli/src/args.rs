//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "uur",
    version,
    about = "Majorization uncertainty bounds for pairs of orthonormal bases",
    long_about = "Computes the majorization vector omega of a pair of bases given by their \
                  overlap unitary U_mn = <a_m|b_n>, derives entropic lower bounds from it, \
                  audits the bound on random states, and cross-checks it against a brute-force optimizer."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// JSON unitary file: {"dim": d, "matrix": [[[re, im], ...], ...]}
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "preset")]
    pub unitary: Option<PathBuf>,

    /// Built-in basis pair: identity[:d] | hadamard | fourier:d | fig7
    #[arg(long, global = true, value_name = "NAME")]
    pub preset: Option<String>,

    /// Angle for the fig7 preset, in radians
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub theta: Option<f64>,

    /// Tolerance for the majorization and entropy checks of `verify`
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Accept nearly unitary input (deviation up to 1e-2) and orthonormalize its columns
    #[arg(long, global = true)]
    pub reorthonormalize: bool,

    /// Print machine-readable JSON instead of tables
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print Omega_1..Omega_d with maximizing partitions, and the vector omega
    Omega,
    /// Print the Maassen-Uffink and majorization bounds
    Bound(MeasureArgs),
    /// Audit the majorization relation on Haar-random pure states (exit 1 on violations)
    Verify(VerifyArgs),
    /// Compare the formula against a brute-force maximization over index regions
    Oracle(OracleArgs),
    /// Scan a theta-parametrized family and write `theta,c,b_jpdd,b_mu` as CSV
    #[command(name = "scan-theta")]
    ScanTheta(ScanArgs),
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// shannon | renyi:<alpha> | tsallis:<q>
    #[arg(long, default_value = "shannon")]
    pub measure: String,

    /// natural | two
    #[arg(long, default_value = "natural")]
    pub log_base: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of Haar-random states
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// Every set of k cells (d <= 3)
    Exhaustive,
    /// Only Young-diagram-shaped regions (d <= 5)
    PartitionShaped,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Region size; every k in 1..=d when omitted
    #[arg(long)]
    pub k: Option<usize>,

    /// Random starts per region
    #[arg(long, default_value_t = 64)]
    pub starts: usize,

    /// Which regions to search
    #[arg(long, value_enum, default_value_t = FamilyArg::Exhaustive)]
    pub family: FamilyArg,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// JSON template {"dim": d, "cos": [...], "sin": [...]} for U(theta) = cos(theta) C + sin(theta) S
    #[arg(long, value_name = "PATH")]
    pub unitary_template: Option<PathBuf>,

    /// Start of the half-open theta range
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub from: f64,

    /// End of the half-open theta range (default 2 pi)
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,

    /// Number of grid points
    #[arg(long, default_value_t = 200)]
    pub steps: usize,

    /// CSV destination; metadata goes to `<out>.meta.json`
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    #[command(flatten)]
    pub measure: MeasureArgs,
}
