use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qbcap", version, about = "Quantum battery capacity of two-qubit states under local projective measurements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Capacity of a state and of its subsystem A.
    Capacity(CapacityArgs),
    /// Measure subsystem B and report the capacity change.
    Measure(MeasureArgs),
    /// Sweep one parameter of a state family and write a table.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
#[group(id = "state_spec", multiple = false, required = true)]
pub struct StateArgs {
    /// Werner state with singlet weight A.
    #[arg(long, value_name = "A")]
    pub werner: Option<f64>,
    /// Bell-diagonal state with correlation coefficients C1 C2 C3.
    #[arg(long = "bell-diag", num_args = 3, value_names = ["C1", "C2", "C3"], allow_negative_numbers = true)]
    pub bell_diag: Option<Vec<f64>>,
    /// X state read from a JSON file of populations and coherences.
    #[arg(long = "x-state", value_name = "FILE")]
    pub x_state: Option<PathBuf>,
    /// The one-parameter X-state family with x in [0, 1/2].
    #[arg(long, value_name = "X")]
    pub example2: Option<f64>,
    /// Density matrix read from a JSON file.
    #[arg(long, value_name = "FILE")]
    pub state: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    /// Level splitting of qubit A.
    #[arg(long = "eps-a", value_name = "E")]
    pub eps_a: f64,
    /// Level splitting of qubit B.
    #[arg(long = "eps-b", value_name = "E")]
    pub eps_b: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub energies: EnergyArgs,
    /// Also sample this many Haar unitaries and report the observed energy range.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub oracle_samples: usize,
    /// Seed for any sampling.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    /// `uniform`, or `weighted MU0 MU1 ...`.
    #[arg(long, num_args = 1.., value_name = "SCHEME")]
    pub scheme: Option<Vec<String>>,
    /// `computational`, or `rotated THETA PHI`.
    #[arg(long, num_args = 1..=3, value_name = "BASIS", allow_negative_numbers = true)]
    pub basis: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub energies: EnergyArgs,
    #[command(flatten)]
    pub protocol: ProtocolArgs,
    /// Accepted for interface uniformity; measurement is deterministic.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    Fig2,
    Fig3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Werner,
    Example2,
    BellDiagonal,
    XState,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Preset reproducing a published curve.
    #[arg(long, value_enum, conflicts_with_all = ["spec", "family"])]
    pub figure: Option<FigureArg>,
    /// Sweep specification as JSON.
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Swept parameter; defaults to the family's first parameter.
    #[arg(long, value_name = "NAME")]
    pub param: Option<String>,
    #[arg(long, value_name = "START", allow_negative_numbers = true)]
    pub from: Option<f64>,
    #[arg(long, value_name = "STOP", allow_negative_numbers = true)]
    pub to: Option<f64>,
    #[arg(long, value_name = "N")]
    pub count: Option<usize>,
    /// Base coefficients for the bell-diagonal family.
    #[arg(long = "bell-diag", num_args = 3, value_names = ["C1", "C2", "C3"], allow_negative_numbers = true)]
    pub bell_diag: Option<Vec<f64>>,
    /// Base parameters for the x-state family.
    #[arg(long = "x-state", value_name = "FILE")]
    pub x_state: Option<PathBuf>,
    #[arg(long = "eps-a", value_name = "E")]
    pub eps_a: Option<f64>,
    #[arg(long = "eps-b", value_name = "E")]
    pub eps_b: Option<f64>,
    #[command(flatten)]
    pub protocol: ProtocolArgs,
    /// Accepted for interface uniformity; sweeps are deterministic.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}
