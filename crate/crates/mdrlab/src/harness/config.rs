use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Campaign selector. The string forms (`fig2`, `fuzz-eq15`, ...) are shared
/// by the CLI, the JSON config file, and the report's `mode` field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Sweep the meter angle on the controlled-NOT family and record the
    /// correlation sum against both bounds.
    Fig2,
    /// Sweep the meter angle and record the composite CHSH pair.
    Chsh,
    /// Random scenarios; check the exact correlation identity.
    FuzzEq15,
    /// Random two-qubit states; check the correlation-area bound.
    FuzzThm1,
    /// Random single-qubit states; check the variance-product relation.
    FuzzRs,
    /// Random scenarios; check both correlation-sum bounds.
    FuzzThm2,
    /// Grid over the hyperbolic-boundary vertex radii.
    Vertex,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Fig2 => "fig2",
            Mode::Chsh => "chsh",
            Mode::FuzzEq15 => "fuzz-eq15",
            Mode::FuzzThm1 => "fuzz-thm1",
            Mode::FuzzRs => "fuzz-rs",
            Mode::FuzzThm2 => "fuzz-thm2",
            Mode::Vertex => "vertex",
        }
    }
}

/// Errors raised by configuration handling, output writing, or a campaign's
/// own evaluation machinery.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Eval(#[from] crate::error::Error),
}

/// Full campaign configuration. Identical configurations produce
/// byte-identical outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    /// Base seed; trial `k` derives its generator from `(seed, k)` so any
    /// trial is reproducible in isolation.
    #[serde(default)]
    pub seed: u64,
    /// Number of random trials for the fuzz modes.
    #[serde(default = "default_trials")]
    pub trials: u64,
    /// Sweep resolution for the grid-driven modes.
    #[serde(default = "default_grid_points")]
    pub grid_points: u64,
    /// Largest accepted residual of exact identities.
    #[serde(default = "default_tol")]
    pub tol_identity: f64,
    /// Most negative accepted margin of inequalities.
    #[serde(default = "default_tol")]
    pub tol_inequality: f64,
    /// CSV output path; empty disables the file.
    #[serde(default)]
    pub out_csv: String,
    /// JSON report path; empty disables the file.
    #[serde(default)]
    pub out_json: String,
}

fn default_trials() -> u64 {
    1000
}

fn default_grid_points() -> u64 {
    181
}

fn default_tol() -> f64 {
    1e-9
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            seed: 0,
            trials: default_trials(),
            grid_points: default_grid_points(),
            tol_identity: default_tol(),
            tol_inequality: default_tol(),
            out_csv: String::new(),
            out_json: String::new(),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials < 1 {
            return Err(HarnessError::InvalidConfig(
                "trials must be at least 1".into(),
            ));
        }
        if self.grid_points < 2 {
            return Err(HarnessError::InvalidConfig(
                "grid_points must be at least 2".into(),
            ));
        }
        for tol in [self.tol_identity, self.tol_inequality] {
            if !tol.is_finite() || tol <= 0.0 {
                return Err(HarnessError::InvalidConfig(
                    "tolerances must be positive and finite".into(),
                ));
            }
        }
        Ok(())
    }

    /// Applies non-empty override fields on top of this configuration.
    pub fn apply(&mut self, overrides: &ConfigOverrides) {
        if let Some(mode) = overrides.mode {
            self.mode = mode;
        }
        if let Some(seed) = overrides.seed {
            self.seed = seed;
        }
        if let Some(trials) = overrides.trials {
            self.trials = trials;
        }
        if let Some(grid_points) = overrides.grid_points {
            self.grid_points = grid_points;
        }
        if let Some(tol) = overrides.tol_identity {
            self.tol_identity = tol;
        }
        if let Some(tol) = overrides.tol_inequality {
            self.tol_inequality = tol;
        }
        if let Some(path) = &overrides.out_csv {
            self.out_csv = path.clone();
        }
        if let Some(path) = &overrides.out_json {
            self.out_json = path.clone();
        }
    }
}

/// Partial configuration, as read from a JSON file or assembled from CLI
/// flags; unset fields leave the base configuration alone.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub trials: Option<u64>,
    #[serde(default)]
    pub grid_points: Option<u64>,
    #[serde(default)]
    pub tol_identity: Option<f64>,
    #[serde(default)]
    pub tol_inequality: Option<f64>,
    #[serde(default)]
    pub out_csv: Option<String>,
    #[serde(default)]
    pub out_json: Option<String>,
}

impl ConfigOverrides {
    pub fn from_json_file(path: &Path) -> Result<Self, HarnessError> {
        let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }
}
