//! Coupling sources shared by the `transient` and `steady` subcommands.

use enzq::model::CouplingParameters;
use enzq::table::{self, CouplingTable};
use enzq::vacuum;

use crate::{config_err, data_err, CliError};

pub enum Source {
    /// Direct coupling constants (γ₁₂/γ, g₁₂/γ).
    Params(CouplingParameters),
    /// Free-space formulas in a medium of the given refractive index.
    Vacuum { index: f64 },
    /// One interpolable coupling table.
    Table(Box<CouplingTable>),
    /// Several wavelength-labelled tables.
    Manifest(Vec<CouplingTable>),
}

pub struct SourceParams {
    pub gamma12: Option<f64>,
    pub g12: Option<f64>,
    pub index: f64,
    pub lambda_nm: f64,
}

/// Parse a `--source` string. Clamp warnings from table loads go to
/// stderr so the CSV on stdout stays clean.
pub fn parse(spec: &str, params: &SourceParams, allow_manifest: bool) -> Result<Source, CliError> {
    if spec == "closed-form" || spec == "params" {
        let gamma12 = params
            .gamma12
            .ok_or_else(|| CliError::Config("source closed-form requires `gamma12`".into()))?;
        let g12 = params
            .g12
            .ok_or_else(|| CliError::Config("source closed-form requires `g12`".into()))?;
        return Ok(Source::Params(
            CouplingParameters::normalized(gamma12, g12).map_err(config_err)?,
        ));
    }
    if spec == "vacuum" {
        if !(params.index > 0.0) {
            return Err(CliError::Config(format!(
                "refractive index must be positive, got {}",
                params.index
            )));
        }
        return Ok(Source::Vacuum {
            index: params.index,
        });
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let loaded = table::load_coupling_table(path, params.lambda_nm, None).map_err(data_err)?;
        warn_clamps(path, &loaded.clamp_warnings);
        return Ok(Source::Table(Box::new(loaded.table)));
    }
    if let Some(path) = spec.strip_prefix("manifest:") {
        if !allow_manifest {
            return Err(CliError::Config(
                "manifest sources are only supported by `transient`".into(),
            ));
        }
        let tables = table::load_manifest(path).map_err(data_err)?;
        let mut out = Vec::with_capacity(tables.len());
        for loaded in tables {
            warn_clamps(path, &loaded.clamp_warnings);
            out.push(loaded.table);
        }
        return Ok(Source::Manifest(out));
    }
    Err(CliError::Config(format!(
        "unknown source {spec:?}; expected closed-form, vacuum, table:<path>, or manifest:<path>"
    )))
}

fn warn_clamps(path: &str, clamps: &[table::ClampEvent]) {
    if !clamps.is_empty() {
        eprintln!(
            "enzq: warning: {}: {} row(s) clamped to |gamma12/gamma| = 1",
            path,
            clamps.len()
        );
    }
}

/// Separation values come from flags or config, so reject bad ones as
/// configuration errors before any sweep starts.
pub fn check_separations(r_values: &[f64], source: &Source) -> Result<(), CliError> {
    for &r in r_values {
        if !r.is_finite() {
            return Err(CliError::Config(format!(
                "separation r/λ₀ must be finite, got {r}"
            )));
        }
        if matches!(source, Source::Vacuum { .. }) && !(r > 0.0) {
            return Err(CliError::Config(format!(
                "the free-space formulas need r/λ₀ > 0, got {r}"
            )));
        }
    }
    Ok(())
}

/// Coupling at a normalized separation for single-table sources.
pub fn resolve(source: &Source, r_over_lambda: f64) -> Result<CouplingParameters, CliError> {
    match source {
        Source::Params(p) => Ok(*p),
        Source::Vacuum { index } => {
            vacuum::vacuum_coupling(r_over_lambda, *index).map_err(data_err)
        }
        Source::Table(t) => table::coupling_at(t, r_over_lambda).map_err(data_err),
        Source::Manifest(_) => Err(CliError::Config(
            "manifest source resolved without a wavelength".into(),
        )),
    }
}
