use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use feynman_clock::io::write_json;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::svg::Plot;
use crate::CliError;

/// A gate count whose computation failed.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub k: usize,
    pub error: String,
}

#[derive(Debug, Serialize)]
pub struct Metadata<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a ExperimentConfig,
    #[serde(skip_serializing_if = "<[Failure]>::is_empty")]
    pub failures: &'a [Failure],
}

impl<'a> Metadata<'a> {
    pub fn new(config: &'a ExperimentConfig, failures: &'a [Failure]) -> Self {
        Self { tool: "fclock", version: env!("CARGO_PKG_VERSION"), config, failures }
    }
}

#[derive(Serialize)]
pub struct Document<'a, R: Serialize> {
    pub metadata: Metadata<'a>,
    pub result: R,
}

pub fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

pub fn finish(mut w: BufWriter<File>, path: &Path) -> Result<(), CliError> {
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Write through `f`, mapping core I/O failures onto `path`.
pub fn write_with(
    path: &Path,
    f: impl FnOnce(&mut BufWriter<File>) -> feynman_clock::Result<()>,
) -> Result<(), CliError> {
    let mut w = create(path)?;
    f(&mut w).map_err(|e| match e {
        feynman_clock::Error::Io(io) => CliError::io(path, io),
        other => CliError::Core(other),
    })?;
    finish(w, path)
}

pub fn write_document<R: Serialize>(path: &Path, metadata: Metadata<'_>, result: R) -> Result<(), CliError> {
    write_with(path, |w| write_json(&Document { metadata, result }, w))
}

/// `<stem>.meta.json` next to a CSV output.
pub fn write_sidecar(cfg: &ExperimentConfig, failures: &[Failure]) -> Result<(), CliError> {
    let path = cfg.sibling_suffixed(".meta", "json");
    write_with(&path, |w| write_json(&Metadata::new(cfg, failures), w))
}

pub fn write_svg(cfg: &ExperimentConfig, failures: &[Failure], mut plot: Plot) -> Result<(), CliError> {
    plot.metadata = serde_json::to_string(&Metadata::new(cfg, failures)).expect("metadata serializes");
    let path = cfg.sibling("svg");
    let mut w = create(&path)?;
    w.write_all(plot.render().as_bytes()).map_err(|e| CliError::io(&path, e))?;
    finish(w, &path)
}

pub fn report_failures(failures: &[Failure]) {
    for f in failures {
        eprintln!("error: k={}: {}", f.k, f.error);
    }
}
