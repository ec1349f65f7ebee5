//! Run configuration: a flat TOML file merged with command-line flags.
//!
//! ```toml
//! experiment = "conc_profile"   # optional; must match the subcommand
//! profile = "sine"              # sine | uniform | explicit
//! kappa = 1.0
//! length = 1.0
//! kappas = [0.5, 1.0, 0.7]      # explicit profile only
//! n_atoms = [10, 20, 30]        # integer, list, or inclusive range "4..20"
//! k = "1..6"
//! pair = "first_vs_all"         # first_vs_all | first_vs_last | [i, j] (1-based)
//! sector_cap = 200000
//! out = "results"
//! plot = true
//! verify = false
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use itc_core::experiments::{Experiment, PairSpec, ProfileKind, ProfileSpec, SweepConfig};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum IntList {
    One(usize),
    Many(Vec<usize>),
    Text(String),
}

impl IntList {
    pub fn expand(&self) -> Result<Vec<usize>, ConfigError> {
        match self {
            Self::One(v) => Ok(vec![*v]),
            Self::Many(v) => Ok(v.clone()),
            Self::Text(s) => parse_int_list(s),
        }
    }
}

/// Parses `"4,6,8"`, `"4..20"` (inclusive) or a mix such as `"2,4..6"`.
pub fn parse_int_list(text: &str) -> Result<Vec<usize>, ConfigError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| ConfigError(format!("not a nonnegative integer: {s:?}")))
        };
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
                if a > b {
                    return err(format!("empty range {item:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(parse(item)?),
        }
    }
    if out.is_empty() {
        return err(format!("empty list {text:?}"));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PairValue {
    Named(String),
    Atoms([usize; 2]),
}

impl PairValue {
    pub fn to_spec(&self) -> Result<PairSpec, ConfigError> {
        match self {
            Self::Named(s) => match s.as_str() {
                "first_vs_all" => Ok(PairSpec::FirstVsAll),
                "first_vs_last" => Ok(PairSpec::FirstVsLast),
                other => {
                    let atoms = parse_int_list(other)?;
                    match atoms[..] {
                        [i, j] => Self::Atoms([i, j]).to_spec(),
                        _ => err(format!("unknown pair {other:?}")),
                    }
                }
            },
            Self::Atoms([i, j]) if *i >= 1 && *j >= 1 && i != j => Ok(PairSpec::Fixed(i - 1, j - 1)),
            Self::Atoms(a) => err(format!("pair atoms are 1-based and distinct, got {a:?}")),
        }
    }
}

/// Keys accepted in a config file; every key has a matching flag.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<String>,
    pub profile: Option<String>,
    pub kappa: Option<f64>,
    pub length: Option<f64>,
    pub kappas: Option<Vec<f64>>,
    pub n_atoms: Option<IntList>,
    pub k: Option<IntList>,
    pub pair: Option<PairValue>,
    pub sector_cap: Option<usize>,
    pub out: Option<PathBuf>,
    pub plot: Option<bool>,
    pub verify: Option<bool>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Flag values win over file values.
    pub fn overlay(self, flags: FileConfig) -> FileConfig {
        FileConfig {
            experiment: flags.experiment.or(self.experiment),
            profile: flags.profile.or(self.profile),
            kappa: flags.kappa.or(self.kappa),
            length: flags.length.or(self.length),
            kappas: flags.kappas.or(self.kappas),
            n_atoms: flags.n_atoms.or(self.n_atoms),
            k: flags.k.or(self.k),
            pair: flags.pair.or(self.pair),
            sector_cap: flags.sector_cap.or(self.sector_cap),
            out: flags.out.or(self.out),
            plot: flags.plot.or(self.plot),
            verify: flags.verify.or(self.verify),
        }
    }
}

pub const DEFAULT_OUT: &str = "results";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub sweep: SweepConfig,
    pub out: PathBuf,
    pub plot: bool,
    pub verify: bool,
}

impl RunConfig {
    pub fn resolve(experiment: Experiment, file: FileConfig) -> Result<Self, ConfigError> {
        if let Some(name) = &file.experiment {
            if name != experiment.name() {
                return err(format!(
                    "config is for experiment {name:?}, not {:?}",
                    experiment.name()
                ));
            }
        }
        let mut sweep = SweepConfig::defaults(experiment);
        let kind = match (file.profile.as_deref(), &file.kappas) {
            (None | Some("sine"), None) => ProfileKind::Sine,
            (Some("uniform"), None) => ProfileKind::Uniform,
            (None | Some("explicit"), Some(k)) => ProfileKind::Explicit(k.clone()),
            (Some("explicit"), None) => return err("profile \"explicit\" needs kappas"),
            (Some(p @ ("sine" | "uniform")), Some(_)) => return err(format!("kappas given for profile {p:?}")),
            (Some(p), _) => return err(format!("unknown profile {p:?}")),
        };
        if let ProfileKind::Explicit(k) = &kind {
            sweep.n_atoms = vec![k.len()];
        }
        sweep.profile = ProfileSpec {
            kind,
            kappa: file.kappa.unwrap_or(1.0),
            length: file.length.unwrap_or(1.0),
        };
        if let Some(list) = &file.n_atoms {
            sweep.n_atoms = list.expand()?;
        }
        if let Some(list) = &file.k {
            sweep.ks = list.expand()?;
        }
        if let Some(pair) = &file.pair {
            sweep.pair = pair.to_spec()?;
        }
        if experiment == Experiment::ConcFirstLast && sweep.pair != PairSpec::FirstVsLast {
            return err("conc_first_last always uses the first and last atom");
        }
        if let Some(cap) = file.sector_cap {
            sweep.sector_cap = cap;
        }
        if !(sweep.profile.kappa > 0.0 && sweep.profile.length > 0.0) {
            return err("kappa and length must be positive");
        }
        sweep.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(Self {
            experiment,
            sweep,
            out: file.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
            plot: file.plot.unwrap_or(false),
            verify: file.verify.unwrap_or(false),
        })
    }
}
