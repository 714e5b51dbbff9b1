//! Experiment configuration: one JSON document, unknown keys rejected.

use crate::registry::Experiment;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::{Path, PathBuf};
use thiserror::Error;
use toeplab_models::{DomainSpec, Geometry, ModelSpec};

#[derive(Debug, Error)]
pub enum RunError {
    /// Bad config or an unsupported model/experiment pairing (exit 2).
    #[error("config error: {0}")]
    Config(String),
    /// A computation failed before a verdict could be reached (exit 1).
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, RunError>;

pub fn config_err(msg: impl Into<String>) -> RunError {
    RunError::Config(msg.into())
}

/// Wraps library errors from the numerical crates.
pub fn compute_err(e: impl std::fmt::Display) -> RunError {
    RunError::Compute(e.to_string())
}

/// Keys accepted in a config file (shown by `--help`).
pub const CONFIG_HELP: &str = "\
Config file (JSON object; unknown keys are errors):
  experiment    one of the names printed by `toeplab list` (required)
  model         geometry and domain, for spectrum-based experiments:
                  geometry   \"cylinder\" | \"bargmann\" | \"sphere\"
                  domain     \"half-cylinder\" | \"disk\" | \"annulus\" | \"shifted-disk\"
                             | \"polar-cap\" | \"empty\" | \"full\"  (default per geometry)
                  radius     disk radius (disk, shifted-disk)
                  inner, outer  annulus radii
                  center     [x, y] centre of a shifted disk (must contain the origin)
                  theta0     polar angle of a cap, in (0, pi)
                  complement use the complementary domain (default false)
                  truncation basis cutoff (default per model)
  k_ladder      strictly increasing list of positive integers
  seed          64-bit integer; required by sampling experiments unless --seed is given
  output_dir    directory for the CSV and JSON outputs (default \"results\")
  tolerances    object of named tolerances; keys depend on the experiment
  parameters    object of experiment parameters; keys depend on the experiment

`toeplab list --verbose` prints each experiment's parameters, tolerances and defaults.";

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    #[serde(default)]
    pub model: Option<ModelConfig>,
    #[serde(default)]
    pub k_ladder: Option<Vec<u32>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub tolerances: Option<Value>,
    #[serde(default)]
    pub parameters: Option<Value>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| config_err(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// A minimal config running `experiment` with all defaults.
    pub fn named(experiment: &str) -> Self {
        Self {
            experiment: experiment.to_string(),
            model: None,
            k_ladder: None,
            seed: None,
            output_dir: None,
            tolerances: None,
            parameters: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeometryName {
    Cylinder,
    Bargmann,
    Sphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainName {
    HalfCylinder,
    Disk,
    Annulus,
    ShiftedDisk,
    PolarCap,
    Empty,
    Full,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub geometry: GeometryName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta0: Option<f64>,
    #[serde(default)]
    pub complement: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

impl ModelConfig {
    pub fn cylinder() -> Self {
        Self::bare(GeometryName::Cylinder)
    }

    pub fn disk(radius: f64) -> Self {
        Self {
            domain: Some(DomainName::Disk),
            radius: Some(radius),
            ..Self::bare(GeometryName::Bargmann)
        }
    }

    fn bare(geometry: GeometryName) -> Self {
        Self {
            geometry,
            domain: None,
            radius: None,
            inner: None,
            outer: None,
            center: None,
            theta0: None,
            complement: false,
            truncation: None,
        }
    }

    pub fn domain_name(&self) -> DomainName {
        self.domain.unwrap_or(match self.geometry {
            GeometryName::Cylinder => DomainName::HalfCylinder,
            GeometryName::Bargmann => DomainName::Disk,
            GeometryName::Sphere => DomainName::PolarCap,
        })
    }

    fn geometry(&self) -> Geometry {
        match self.geometry {
            GeometryName::Cylinder => Geometry::Cylinder,
            GeometryName::Bargmann => Geometry::BargmannPlane,
            GeometryName::Sphere => Geometry::Sphere,
        }
    }

    fn required(&self, value: Option<f64>, key: &str) -> Result<f64> {
        value.ok_or_else(|| {
            config_err(format!("model.{key} is required for domain {:?}", self.domain_name()))
        })
    }

    /// Rejects keys that the chosen domain does not read.
    fn check_unused(&self) -> Result<()> {
        let used: &[&str] = match self.domain_name() {
            DomainName::Disk => &["radius"],
            DomainName::ShiftedDisk => &["radius", "center"],
            DomainName::Annulus => &["inner", "outer"],
            DomainName::PolarCap => &["theta0"],
            DomainName::HalfCylinder | DomainName::Empty | DomainName::Full => &[],
        };
        let present = [
            ("radius", self.radius.is_some()),
            ("inner", self.inner.is_some()),
            ("outer", self.outer.is_some()),
            ("center", self.center.is_some()),
            ("theta0", self.theta0.is_some()),
        ];
        for (key, set) in present {
            if set && !used.contains(&key) {
                return Err(config_err(format!(
                    "model.{key} is not used by domain {:?}",
                    self.domain_name()
                )));
            }
        }
        Ok(())
    }

    pub fn domain_spec(&self) -> Result<DomainSpec> {
        self.check_unused()?;
        let d = match self.domain_name() {
            DomainName::HalfCylinder => Ok(DomainSpec::half_cylinder()),
            DomainName::Empty => Ok(DomainSpec::empty()),
            DomainName::Full => Ok(DomainSpec::full()),
            DomainName::Disk => DomainSpec::disk(self.required(self.radius, "radius")?),
            DomainName::ShiftedDisk => {
                let c = self
                    .center
                    .ok_or_else(|| config_err("model.center is required for a shifted disk"))?;
                DomainSpec::shifted_disk(
                    self.required(self.radius, "radius")?,
                    Complex64::new(c[0], c[1]),
                )
            }
            DomainName::Annulus => DomainSpec::annulus(
                self.required(self.inner, "inner")?,
                self.required(self.outer, "outer")?,
            ),
            DomainName::PolarCap => DomainSpec::polar_cap(self.required(self.theta0, "theta0")?),
        }
        .map_err(|e| config_err(format!("model: {e}")))?;
        Ok(if self.complement { d.complement() } else { d })
    }

    pub fn model_spec(&self, k: u32) -> Result<ModelSpec> {
        let mut spec = ModelSpec::new(self.geometry(), self.domain_spec()?, k)
            .map_err(|e| config_err(format!("model: {e}")))?;
        if let Some(t) = self.truncation {
            spec = spec.with_truncation(t);
        }
        Ok(spec)
    }

    pub fn is_centred_bargmann_disk(&self) -> bool {
        self.geometry == GeometryName::Bargmann
            && self.domain_name() == DomainName::Disk
            && !self.complement
    }
}

/// Everything an experiment needs once the config and the command-line
/// overrides have been merged.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub experiment: Experiment,
    pub model: Option<ModelConfig>,
    pub ladder: Vec<u32>,
    pub seed: Option<u64>,
    pub tolerances: Value,
    pub parameters: Value,
}

impl Resolved {
    pub fn from_config(config: &ExperimentConfig, seed_override: Option<u64>) -> Result<Self> {
        let experiment = Experiment::from_name(&config.experiment).ok_or_else(|| {
            config_err(format!(
                "experiment: unknown experiment `{}` (see `toeplab list`)",
                config.experiment
            ))
        })?;
        let info = experiment.info();
        let model = match (&config.model, info.default_model) {
            (Some(_), None) => {
                return Err(config_err(format!(
                    "model: experiment {} does not take a model",
                    info.name
                )))
            }
            (Some(m), Some(_)) => Some(m.clone()),
            (None, Some(default)) => Some(default()),
            (None, None) => None,
        };
        if let Some(m) = &model {
            // validates the domain keys even when k is still unknown
            m.model_spec(1)?;
        }
        let ladder = match (&config.k_ladder, info.default_ladder) {
            (Some(_), None) => {
                return Err(config_err(format!(
                    "k_ladder: experiment {} does not use a k-ladder",
                    info.name
                )))
            }
            (Some(l), Some(_)) => l.clone(),
            (None, Some(default)) => default.to_vec(),
            (None, None) => Vec::new(),
        };
        if info.default_ladder.is_some() {
            if ladder.is_empty() {
                return Err(config_err("k_ladder: must not be empty"));
            }
            if ladder.contains(&0) {
                return Err(config_err("k_ladder: entries must be positive"));
            }
            if ladder.windows(2).any(|w| w[1] <= w[0]) {
                return Err(config_err("k_ladder: must be strictly increasing"));
            }
        }
        let seed = seed_override.or(config.seed);
        if info.samples && seed.is_none() {
            return Err(config_err(format!(
                "seed: experiment {} samples and needs a seed (config or --seed)",
                info.name
            )));
        }
        for (key, v) in [("tolerances", &config.tolerances), ("parameters", &config.parameters)] {
            if let Some(v) = v {
                if !v.is_object() {
                    return Err(config_err(format!("{key}: must be a JSON object")));
                }
            }
        }
        Ok(Self {
            experiment,
            model,
            ladder,
            seed,
            tolerances: config.tolerances.clone().unwrap_or(Value::Null),
            parameters: config.parameters.clone().unwrap_or(Value::Null),
        })
    }

    pub fn model(&self) -> &ModelConfig {
        self.model.as_ref().expect("experiment declares a model")
    }

    pub fn seed(&self) -> u64 {
        self.seed.expect("sampling experiments are checked for a seed")
    }

    pub fn ladder_f64(&self) -> Vec<f64> {
        self.ladder.iter().map(|&k| k as f64).collect()
    }
}

/// Deserializes an optional JSON object into `T`, filling defaults and
/// rejecting unknown keys; errors name the section.
pub fn section<T: DeserializeOwned + Default>(value: &Value, name: &str) -> Result<T> {
    if value.is_null() {
        return Ok(T::default());
    }
    serde_json::from_value(value.clone()).map_err(|e| config_err(format!("{name}: {e}")))
}
