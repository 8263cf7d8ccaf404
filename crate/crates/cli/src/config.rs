//! Optional TOML run configuration. Command-line flags override file
//! values; fields left unset in both fall back to built-in defaults or,
//! for required parameters, produce a configuration error naming the
//! field.

use serde::Deserialize;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub deterministic: Option<bool>,
    pub tol: Option<f64>,
    #[serde(default)]
    pub dispersion: DispersionSection,
    #[serde(default)]
    pub vacuum: VacuumSection,
    #[serde(default)]
    pub transient: TransientSection,
    #[serde(default)]
    pub steady: SteadySection,
    #[serde(default)]
    pub rabi: RabiSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionSection {
    pub diameters_nm: Option<Vec<f64>>,
    pub lambda_min_nm: Option<f64>,
    pub lambda_max_nm: Option<f64>,
    pub lambda_step_nm: Option<f64>,
    pub mode_root: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VacuumSection {
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub r_steps: Option<usize>,
    pub index: Option<f64>,
    pub indices: Option<Vec<f64>>,
    pub beta: Option<f64>,
    pub r: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransientSection {
    pub source: Option<String>,
    pub method: Option<String>,
    pub gamma12: Option<f64>,
    pub g12: Option<f64>,
    pub index: Option<f64>,
    pub lambda_nm: Option<f64>,
    pub r: Option<f64>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub r_steps: Option<usize>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteadySection {
    pub source: Option<String>,
    pub schemes: Option<Vec<String>>,
    pub gamma12: Option<f64>,
    pub g12: Option<f64>,
    pub index: Option<f64>,
    pub lambda_nm: Option<f64>,
    pub r: Option<Vec<f64>>,
    pub omega1: Option<String>,
    pub omega2: Option<String>,
    pub detuning: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RabiSection {
    pub alphas: Option<Vec<f64>>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub crosscheck: Option<bool>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
    }
}

/// Flag value wins over file value; otherwise the built-in default.
pub fn merge<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Flag value wins over file value; missing on both sides is an error
/// naming the field.
pub fn require<T>(flag: Option<T>, file: Option<T>, field: &str) -> Result<T, CliError> {
    flag.or(file)
        .ok_or_else(|| CliError::Config(format!("missing required parameter `{field}`")))
}
