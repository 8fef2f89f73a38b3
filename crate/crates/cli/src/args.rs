use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "posmap",
    version,
    about = "Positive maps, Choi matrices and entanglement witnesses on C2 x C4"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the map to an n x n matrix read from a JSON file.
    MapApply(MapApplyArgs),
    /// Build the Choi matrix of the qubit map.
    Choi(ChoiArgs),
    /// Evaluate a witness on a state and report whether it is detected.
    Detect(DetectArgs),
    /// Audit every published numeric claim and write a JSON report.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct MapApplyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChoiArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the eigenvalues in ascending order.
    #[arg(long)]
    pub eigs: bool,
    /// Print the complete-positivity verdict and its certificate.
    #[arg(long)]
    pub cp_check: bool,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// `builtin:ALPHA,BETA` or a path to an 8x8 matrix file.
    #[arg(long)]
    pub witness: String,
    /// `horodecki`, `npt`, or a path to an 8x8 density matrix file.
    #[arg(long)]
    pub state: String,
    /// Parameter of the Horodecki state, in [0, 1].
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// CSV output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of points on the b in [0, 1] grid.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..=100_000))]
    pub grid: u32,
}
