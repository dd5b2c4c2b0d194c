//! `fclock`: experiments on the clock Hamiltonian from the command line.
//!
//! Exit status: 0 when all requested work succeeded, 1 when some item or
//! suite failed, 2 for usage and configuration errors, 3 for I/O errors,
//! 4 for unreadable input files.

mod cli;
mod commands;
mod config;
mod output;
mod svg;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use crate::cli::{Cli, Command};
use crate::config::ExperimentConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] feynman_clock::Error),
    #[error("{0} item(s) failed")]
    Failed(usize),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_) | CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Input(_) => 4,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = ExperimentConfig::resolve(&cli.common, &cli.command)?;
    if let Some(jobs) = cfg.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }
    match cli.command {
        Command::PkCurve(_) => commands::pk_curve(&cfg),
        Command::Sweep(_) => commands::sweep(&cfg),
        Command::Fit(_) => commands::fit(&cfg),
        Command::Gap(_) => commands::gap(&cfg),
        Command::Asymptotics(_) => commands::asymptotics(&cfg),
        Command::Verify(_) => commands::verify(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
