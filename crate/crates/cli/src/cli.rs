use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use feynman_clock::verification::Level;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "fclock", version, about = "Experiments on the Feynman clock Hamiltonian")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Primary output file; sidecars are written next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with defaults for any option. Flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also write an SVG plot.
    #[arg(long, global = true)]
    pub svg: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Success probability P_k(t) on a uniform time grid.
    PkCurve(PkCurveArgs),
    /// First and second maxima for a list of gate counts.
    Sweep(KArgs),
    /// Fit a scaling law to a sweep CSV.
    Fit(FitArgs),
    /// Minimum spectral gap of the adiabatic clock.
    Gap(GapArgs),
    /// Large-k approximations next to exact values.
    Asymptotics(KArgs),
    /// Run the self-check suites.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::PkCurve(_) => "pk-curve",
            Command::Sweep(_) => "sweep",
            Command::Fit(_) => "fit",
            Command::Gap(_) => "gap",
            Command::Asymptotics(_) => "asymptotics",
            Command::Verify(_) => "verify",
        }
    }

    pub fn default_out(&self) -> &'static str {
        match self {
            Command::PkCurve(_) => "pk_curve.csv",
            Command::Sweep(_) => "sweep.csv",
            Command::Fit(_) => "fit.json",
            Command::Gap(_) => "gap.csv",
            Command::Asymptotics(_) => "asymptotics.json",
            Command::Verify(_) => "verify.json",
        }
    }
}

#[derive(Debug, Args)]
pub struct PkCurveArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct KArgs {
    /// Gate counts, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// `lo:hi:n`, n log-spaced gate counts.
    #[arg(long)]
    pub k_log: Option<String>,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long)]
    pub k_log: Option<String>,
    #[arg(long)]
    pub grid_size: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    /// τ₁ = a + b·k
    Tau,
    /// P(τ₁) = c·k^e
    Prob,
    /// Δτ = c·k^e
    Spacing,
    /// τ₁·⌈1/P(τ₁)⌉ = c·k^e
    Runtime,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Sweep CSV written by `fclock sweep`.
    pub sweep_file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub law: Option<Law>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Quick => Level::Quick,
            LevelArg::Full => Level::Full,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub level: Option<LevelArg>,
    /// Gate-sequence JSON to check in addition to the random suites.
    #[arg(long)]
    pub gates: Option<PathBuf>,
}
