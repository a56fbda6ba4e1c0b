use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spinring::ising::{BETA_MIN, BETA_NEAR_ZERO};
use spinring::photonics::{NoiseModel, SourceParams};

use crate::error::CliError;

pub const DEFAULT_STEPS: usize = 200;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_COUNTS: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Measured Svetlichny value and its quoted error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableInput {
    pub s3: f64,
    #[serde(default)]
    pub error: f64,
}

pub fn default_table_inputs() -> Vec<TableInput> {
    [
        (4.83, 0.15),
        (4.89, 0.31),
        (4.47, 0.12),
        (4.32, 0.13),
        (3.64, 0.10),
        (2.98, 0.09),
        (2.18, 0.07),
    ]
    .into_iter()
    .map(|(s3, error)| TableInput { s3, error })
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub beta_min: f64,
    pub beta_max: f64,
    pub steps: usize,
    /// Mix the ground state with white noise at weight `p(beta)`.
    pub noise: bool,
    pub noise_model: NoiseModel,
    /// Mean coincidences per setting; `None` disables count simulation in
    /// sweeps and means 10^4 for Monte Carlo runs.
    pub counts: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    pub source: SourceParams,
    /// Single field value for `optimize`; the whole grid when absent.
    pub beta: Option<f64>,
    pub table: Vec<TableInput>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            beta_min: BETA_MIN,
            beta_max: BETA_NEAR_ZERO,
            steps: DEFAULT_STEPS,
            noise: true,
            noise_model: NoiseModel::default(),
            counts: None,
            trials: DEFAULT_TRIALS,
            seed: 1,
            source: SourceParams::default(),
            beta: None,
            table: default_table_inputs(),
            out: None,
            format: Format::Csv,
        }
    }
}

fn in_beta_range(b: f64) -> bool {
    b.is_finite() && (BETA_MIN..=BETA_NEAR_ZERO).contains(&b)
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !in_beta_range(self.beta_min) || !in_beta_range(self.beta_max) {
            return bad(format!(
                "beta range [{}, {}] must lie within [{BETA_MIN}, {BETA_NEAR_ZERO}]",
                self.beta_min, self.beta_max
            ));
        }
        if self.beta_min >= self.beta_max {
            return bad(format!(
                "beta_min {} must be below beta_max {}",
                self.beta_min, self.beta_max
            ));
        }
        if self.steps < 3 {
            return bad(format!(
                "steps = {} but the derivative needs at least 3",
                self.steps
            ));
        }
        if let Some(c) = self.counts {
            if !(c.is_finite() && c > 0.0) {
                return bad(format!("counts = {c} must be positive"));
            }
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if let Some(b) = self.beta {
            if !in_beta_range(b) {
                return bad(format!(
                    "beta = {b} must lie within [{BETA_MIN}, {BETA_NEAR_ZERO}]"
                ));
            }
        }
        for t in &self.table {
            if !(t.s3.is_finite() && t.error.is_finite() && t.error >= 0.0) {
                return bad(format!(
                    "table entry {} +- {} is not a finite value with a non-negative error",
                    t.s3, t.error
                ));
            }
        }
        self.noise_model
            .validate()
            .and_then(|_| self.source.validate())
            .map_err(|e| CliError::Config(e.to_string()))
    }

    /// Uniform grid of `steps` points from `beta_min` to `beta_max`.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps;
        let h = (self.beta_max - self.beta_min) / (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k + 1 == n {
                    self.beta_max
                } else {
                    self.beta_min + k as f64 * h
                }
            })
            .collect()
    }

    pub fn active_noise(&self) -> NoiseModel {
        if self.noise {
            self.noise_model
        } else {
            NoiseModel::NONE
        }
    }
}
