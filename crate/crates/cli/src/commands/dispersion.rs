use enzq::waveguide::{dispersion_curve, DEFAULT_MODE_ROOT};

use crate::config::{merge, require, DispersionSection};
use crate::output::{step_grid, CsvDoc};
use crate::{config_err, CliError, RunContext};

#[allow(clippy::too_many_arguments)]
pub fn run(
    ctx: &RunContext,
    file: &DispersionSection,
    diameters: Option<Vec<f64>>,
    lambda_min: Option<f64>,
    lambda_max: Option<f64>,
    lambda_step: Option<f64>,
    mode_root: Option<f64>,
) -> Result<(), CliError> {
    let diameters = require(diameters, file.diameters_nm.clone(), "diameters")?;
    if diameters.is_empty() {
        return Err(CliError::Config("`diameters` list is empty".into()));
    }
    let lambda_min = require(lambda_min, file.lambda_min_nm, "lambda_min")?;
    let lambda_max = require(lambda_max, file.lambda_max_nm, "lambda_max")?;
    let lambda_step = require(lambda_step, file.lambda_step_nm, "lambda_step")?;
    let mode_root = merge(mode_root, file.mode_root, DEFAULT_MODE_ROOT);

    let lambdas = step_grid(lambda_min, lambda_max, lambda_step)?;
    let table = dispersion_curve(&diameters, &lambdas, mode_root).map_err(config_err)?;

    let mut doc = CsvDoc::new("dispersion");
    doc.meta(&format!("mode_root = {mode_root}"));
    doc.meta(&format!(
        "lambda grid: [{lambda_min}, {lambda_max}] nm, step {lambda_step} nm"
    ));
    doc.header("diameter_nm,lambda_nm,n_eff_re,n_eff_im");
    for point in table {
        doc.row(&[
            point.diameter_nm,
            point.lambda_nm,
            point.n_eff.re,
            point.n_eff.im,
        ]);
    }
    doc.write_to(ctx.out.as_deref())
}
