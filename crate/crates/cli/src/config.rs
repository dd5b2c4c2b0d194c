use std::path::{Path, PathBuf};

use feynman_clock::peaks::{log_spaced_ks, PeakConfig};
use feynman_clock::tolerance;
use feynman_clock::verification::Level;
use serde::{Deserialize, Serialize};

use crate::cli::{Command, Common, Law};
use crate::CliError;

/// Values read from a `--config` TOML file. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub svg: Option<bool>,
    pub k: Option<Vec<usize>>,
    pub k_log: Option<String>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub points: Option<usize>,
    pub sweep_file: Option<PathBuf>,
    pub law: Option<Law>,
    pub grid_size: Option<usize>,
    pub level: Option<Level>,
    pub gates: Option<PathBuf>,
    pub peak: Option<PeakConfig>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// The merged configuration a command runs with. Written into the metadata
/// of every output so a run can be repeated from its own outputs.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub command: &'static str,
    pub out: PathBuf,
    /// Worker threads; excluded from metadata since it never changes results.
    #[serde(skip)]
    pub jobs: Option<usize>,
    pub seed: u64,
    pub svg: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<Law>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<Level>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gates: Option<PathBuf>,
    pub peak: PeakConfig,
}

fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// `lo:hi:n` into `n` log-spaced integers, deduplicated.
pub fn parse_k_log(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("--k-log expects lo:hi:n, got `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else { return Err(bad()) };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    log_spaced_ks(lo, hi, n).map_err(|e| CliError::Usage(format!("--k-log {spec}: {e}")))
}

fn gate_counts(flag_k: &[usize], flag_log: Option<&str>, file: &FileConfig) -> Result<Vec<usize>, CliError> {
    let (list, log) = if flag_k.is_empty() && flag_log.is_none() {
        (file.k.clone().unwrap_or_default(), file.k_log.clone())
    } else {
        (flag_k.to_vec(), flag_log.map(str::to_owned))
    };
    let mut ks = list;
    if let Some(spec) = log {
        ks.extend(parse_k_log(&spec)?);
    }
    ks.sort_unstable();
    ks.dedup();
    Ok(ks)
}

impl ExperimentConfig {
    pub fn resolve(common: &Common, command: &Command) -> Result<Self, CliError> {
        let file = match &common.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let name = command.name();
        let mut cfg = ExperimentConfig {
            command: name,
            out: pick(common.out.clone(), file.out.clone(), PathBuf::from(command.default_out())),
            jobs: common.jobs.or(file.jobs),
            seed: pick(common.seed, file.seed, 0),
            svg: common.svg || file.svg.unwrap_or(false),
            k: Vec::new(),
            t_min: None,
            t_max: None,
            points: None,
            sweep_file: None,
            law: None,
            grid_size: None,
            level: None,
            gates: None,
            peak: file.peak.unwrap_or_default(),
        };
        match command {
            Command::PkCurve(a) => {
                cfg.k = vec![pick(a.k, file.k.as_ref().and_then(|v| v.first().copied()), 9999)];
                let k = cfg.k[0];
                cfg.t_min = Some(pick(a.t_min, file.t_min, 0.0));
                cfg.t_max = Some(pick(a.t_max, file.t_max, 2.0 * (k + 2) as f64));
                cfg.points = Some(pick(a.points, file.points, 2001));
            }
            Command::Sweep(a) | Command::Asymptotics(a) => {
                cfg.k = gate_counts(&a.k, a.k_log.as_deref(), &file)?;
            }
            Command::Gap(a) => {
                cfg.k = gate_counts(&a.k, a.k_log.as_deref(), &file)?;
                cfg.grid_size = Some(pick(a.grid_size, file.grid_size, tolerance::GAP_GRID));
            }
            Command::Fit(a) => {
                cfg.sweep_file = a.sweep_file.clone().or(file.sweep_file.clone());
                cfg.law = a.law.or(file.law);
            }
            Command::Verify(a) => {
                cfg.level = Some(pick(a.level.map(Level::from), file.level, Level::Quick));
                cfg.gates = a.gates.clone().or(file.gates.clone());
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let usage = |m: &str| Err(CliError::Usage(m.to_owned()));
        match self.command {
            "sweep" | "asymptotics" | "gap" if self.k.is_empty() => usage("no gate counts given; use --k or --k-log"),
            "fit" if self.sweep_file.is_none() => usage("fit needs a sweep file"),
            "fit" if self.law.is_none() => usage("fit needs --law"),
            "pk-curve" => {
                let (lo, hi, n) = (self.t_min.unwrap_or(0.0), self.t_max.unwrap_or(0.0), self.points.unwrap_or(0));
                if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && hi > lo) {
                    usage("pk-curve needs 0 <= t-min < t-max")
                } else if n < 2 {
                    usage("pk-curve needs at least 2 points")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// `<out>` with its extension replaced.
    pub fn sibling(&self, ext: &str) -> PathBuf {
        self.out.with_extension(ext)
    }

    pub fn sibling_suffixed(&self, suffix: &str, ext: &str) -> PathBuf {
        let stem = self.out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        self.out.with_file_name(format!("{stem}{suffix}.{ext}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_log_spec() {
        assert_eq!(parse_k_log("100:10000:3").unwrap(), vec![100, 1000, 10000]);
        assert!(parse_k_log("100:10000").is_err());
        assert!(parse_k_log("a:b:c").is_err());
    }

    #[test]
    fn file_config_rejects_unknown_keys() {
        assert!(toml::from_str::<FileConfig>("kk = 3").is_err());
        let f: FileConfig = toml::from_str("k = [4, 8]\nseed = 7\n[peak]\nnoise_floor = 1e-9\n").unwrap();
        assert_eq!(f.k, Some(vec![4, 8]));
        assert_eq!(f.peak.unwrap().noise_floor, 1e-9);
    }
}
