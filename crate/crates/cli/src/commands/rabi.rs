use num_complex::Complex64 as C64;
use rayon::prelude::*;

use enzq::dynamics::{evolve, single_qubit_rho_ee, LindbladGenerator};
use enzq::model::{Basis, CouplingParameters, DensityMatrix, PumpDrive, TimeGrid};

use crate::config::{merge, require, RabiSection};
use crate::output::{linspace, CsvDoc};
use crate::{data_err, CliError, RunContext};

pub fn run(
    ctx: &RunContext,
    file: &RabiSection,
    alphas: Option<Vec<f64>>,
    t_max: Option<f64>,
    t_steps: Option<usize>,
    crosscheck: bool,
) -> Result<(), CliError> {
    let alphas = require(alphas, file.alphas.clone(), "alphas")?;
    if alphas.is_empty() {
        return Err(CliError::Config("`alphas` list is empty".into()));
    }
    if let Some(bad) = alphas.iter().find(|a| !(**a >= 0.0) || !a.is_finite()) {
        return Err(CliError::Config(format!(
            "alphas must be non-negative, got {bad}"
        )));
    }
    let t_max = merge(t_max, file.t_max, 20.0);
    let t_steps = merge(t_steps, file.t_steps, 200);
    let crosscheck = crosscheck || file.crosscheck.unwrap_or(false);
    let times = linspace(0.0, t_max, t_steps)?;

    // master-equation column: single qubit embedded in the pair with the
    // partner undriven and uncoupled
    let me_columns: Option<Vec<Vec<f64>>> = if crosscheck {
        let columns: Result<Vec<Vec<f64>>, CliError> = alphas
            .par_iter()
            .map(|&alpha| {
                let coupling = CouplingParameters::normalized(0.0, 0.0).map_err(data_err)?;
                let pump = PumpDrive::new(C64::new(alpha, 0.0), C64::new(0.0, 0.0), 0.0)
                    .map_err(data_err)?;
                let gen = LindbladGenerator::new(coupling, pump);
                let grid = TimeGrid::new(times.clone()).map_err(data_err)?;
                let ground = DensityMatrix::basis_state(3, Basis::Dicke);
                let traj = evolve(&ground, &gen, &grid, &ctx.integrator()).map_err(data_err)?;
                Ok(traj
                    .states
                    .iter()
                    .map(|s| s.reduce_qubit2()[0][0].re)
                    .collect())
            })
            .collect();
        Some(columns?)
    } else {
        None
    };

    let mut doc = CsvDoc::new("rabi");
    doc.meta("closed-form driven-qubit populations; steady value 2a^2/(1+4a^2)");
    if crosscheck {
        doc.meta("rho_ee_me: master-equation evolution of the embedded single qubit");
        doc.header("alpha,t_norm,rho_ee,rho_gg,rho_ee_me");
    } else {
        doc.header("alpha,t_norm,rho_ee,rho_gg");
    }
    for (k, &alpha) in alphas.iter().enumerate() {
        for (i, &t) in times.iter().enumerate() {
            let ree = single_qubit_rho_ee(alpha, t);
            match &me_columns {
                Some(cols) => doc.row(&[alpha, t, ree, 1.0 - ree, cols[k][i]]),
                None => doc.row(&[alpha, t, ree, 1.0 - ree]),
            }
        }
    }
    doc.write_to(ctx.out.as_deref())
}
