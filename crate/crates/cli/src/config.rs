use std::path::Path;

use curveballs::range::{SampleSpec, DEFAULT_C};
use curveballs::Measure;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Settings shared by all subcommands, as echoed into every result record.
/// A config file uses the same schema with every field optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<Measure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: RunConfig) -> RunConfig {
        RunConfig {
            measure: self.measure.or(lower.measure),
            radius: self.radius.or(lower.radius),
            epsilon: self.epsilon.or(lower.epsilon),
            delta: self.delta.or(lower.delta),
            nu: self.nu.or(lower.nu),
            c: self.c.or(lower.c),
            seed: self.seed.or(lower.seed),
            tolerance: self.tolerance.or(lower.tolerance),
            inputs: if self.inputs.is_empty() { lower.inputs } else { self.inputs },
            output: self.output.or(lower.output),
        }
    }

    pub fn defaults() -> RunConfig {
        RunConfig {
            measure: Some(Measure::Frechet),
            epsilon: Some(0.1),
            delta: Some(0.1),
            c: Some(DEFAULT_C),
            seed: Some(0),
            tolerance: Some(curveballs::distance::DEFAULT_TOL),
            ..RunConfig::default()
        }
    }

    pub fn measure(&self) -> Measure {
        self.measure.unwrap_or(Measure::Frechet)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn tolerance(&self) -> Result<f64, CliError> {
        match self.tolerance {
            Some(t) if t > 0.0 && t.is_finite() => Ok(t),
            t => Err(CliError::Usage(format!("--tol must be positive, got {t:?}"))),
        }
    }

    pub fn radius(&self) -> Result<f64, CliError> {
        match self.radius {
            Some(r) if r >= 0.0 => Ok(r),
            Some(r) => Err(CliError::Usage(format!("--r must be non-negative, got {r}"))),
            None => Err(CliError::Usage("--r is required".into())),
        }
    }

    pub fn sample_spec(&self) -> Result<SampleSpec, CliError> {
        let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("{flag} is required")));
        SampleSpec::new(
            need(self.epsilon, "--eps")?,
            need(self.delta, "--delta")?,
            need(self.nu, "--nu")?,
            need(self.c, "--C")?,
        )
        .map_err(|e| CliError::Usage(e.to_string()))
    }
}
