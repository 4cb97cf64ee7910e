//! JSON run configuration. Unknown keys are rejected at every level.

use std::path::PathBuf;

use mfspec_core::{IfsSystemF64, PotentialF64, SolverOptionsF64};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub potential: PotentialConfig,
    pub command: CommandConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemConfig {
    /// Affine contractions placed left to right from 0.
    Linear {
        ratios: Vec<f64>,
    },
    /// Inverse branches `y/(1+y)` and `1/(2-y)`.
    Example2,
    MannevillePomeau {
        beta: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    FirstSymbol {
        values: Vec<f64>,
    },
    /// `F(x) = x`.
    Coordinate,
    /// Indicator of branch `branch` (0-based).
    IndicatorBranch {
        branch: usize,
    },
    /// `F(x) = sum_k coefficients[k] x^k`.
    Polynomial {
        coefficients: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    /// `points` equally spaced values from `start` to `stop` inclusive.
    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.start],
            k => {
                let step = (self.stop - self.start) / (k - 1) as f64;
                (0..k)
                    .map(|i| {
                        if i + 1 == k {
                            self.stop
                        } else {
                            self.start + step * i as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Besicovitch,
    Moran,
    Markov,
    Lemma1,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_owned())).map_err(|_| {
            format!("unknown suite '{s}' (expected besicovitch, moran, markov or lemma1)")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CommandConfig {
    /// Give exactly one of `alphas` and `grid`.
    Spectrum {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphas: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid: Option<Grid>,
    },
    Single {
        alpha: f64,
    },
    /// Attractor estimate at depth `n`.
    Dim,
    /// Alternating blocks of a Markov source and a constant parabolic
    /// symbol. Defaults: `k_i = i` and `eps_i = 1 / i^2`, as many stages as
    /// fit in `horizon`.
    Sample {
        transition: Vec<Vec<f64>>,
        initial: Vec<f64>,
        parabolic_symbol: u8,
        horizon: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eps: Option<Vec<f64>>,
    },
    Validate {
        suite: Suite,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub ratio_tol: f64,
    pub constraint_tol: f64,
    pub moran_tol: f64,
    pub max_iterations: usize,
    pub enumeration_cap: usize,
    /// Seed for the `sample` command; the estimators are deterministic.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let o = SolverOptionsF64::default();
        Self {
            n: o.depth,
            rho: None,
            delta: None,
            ratio_tol: o.ratio_tol,
            constraint_tol: o.constraint_tol,
            moran_tol: o.moran_tol,
            max_iterations: o.max_iterations,
            enumeration_cap: o.enumeration_cap,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn options(&self) -> SolverOptionsF64 {
        SolverOptionsF64 {
            depth: self.n,
            rho: self.rho,
            delta: self.delta,
            ratio_tol: self.ratio_tol,
            constraint_tol: self.constraint_tol,
            moran_tol: self.moran_tol,
            max_iterations: self.max_iterations,
            enumeration_cap: self.enumeration_cap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    /// Table destination; stdout when absent. Relative paths resolve against
    /// the config file's directory.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub format: Format,
    /// Digits after the decimal point.
    pub precision: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            path: None,
            format: Format::Csv,
            precision: 10,
        }
    }
}

impl RunConfig {
    pub fn build_system(&self) -> mfspec_core::Result<IfsSystemF64> {
        match &self.system {
            SystemConfig::Linear { ratios } => IfsSystemF64::linear(ratios),
            SystemConfig::Example2 => IfsSystemF64::example2(),
            SystemConfig::MannevillePomeau { beta } => IfsSystemF64::manneville_pomeau(*beta),
        }
    }

    pub fn build_potential(&self) -> PotentialF64 {
        match &self.potential {
            PotentialConfig::FirstSymbol { values } => PotentialF64::FirstSymbol(values.clone()),
            PotentialConfig::Coordinate => PotentialF64::Coordinate,
            PotentialConfig::IndicatorBranch { branch } => PotentialF64::IndicatorBranch(*branch),
            PotentialConfig::Polynomial { coefficients } => {
                PotentialF64::Polynomial(coefficients.clone())
            }
        }
    }

    /// The alpha values a spectrum or single command evaluates.
    pub fn alphas(&self) -> Option<Vec<f64>> {
        match &self.command {
            CommandConfig::Spectrum {
                alphas: Some(a), ..
            } => Some(a.clone()),
            CommandConfig::Spectrum { grid: Some(g), .. } => Some(g.values()),
            CommandConfig::Single { alpha } => Some(vec![*alpha]),
            _ => None,
        }
    }

    fn check(&self) -> Result<(), ConfigError> {
        if let CommandConfig::Spectrum { alphas, grid } = &self.command {
            match (alphas, grid) {
                (Some(_), Some(_)) | (None, None) => {
                    return Err(ConfigError::Invalid(
                        "command.spectrum needs exactly one of 'alphas' and 'grid'".into(),
                    ))
                }
                (Some(a), None) if a.is_empty() => {
                    return Err(ConfigError::Invalid("command.alphas is empty".into()))
                }
                (None, Some(g)) if g.points == 0 => {
                    return Err(ConfigError::Invalid(
                        "command.grid.points must be positive".into(),
                    ))
                }
                _ => {}
            }
        }
        if let Some(a) = self.alphas() {
            if a.iter().any(|x| !x.is_finite()) {
                return Err(ConfigError::Invalid("alpha values must be finite".into()));
            }
        }
        let sys = self
            .build_system()
            .map_err(|e| ConfigError::Invalid(format!("system: {e}")))?;
        self.build_potential()
            .validate(&sys)
            .map_err(|e| ConfigError::Invalid(format!("potential: {e}")))?;
        self.solver
            .options()
            .validate()
            .map_err(|e| ConfigError::Invalid(format!("solver: {e}")))?;
        Ok(())
    }
}

/// Parses and validates a config; schema errors name the offending key.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: RunConfig =
        serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
    config.check()?;
    Ok(config)
}

pub fn to_json(config: &RunConfig) -> String {
    serde_json::to_string_pretty(config).expect("config serializes")
}
