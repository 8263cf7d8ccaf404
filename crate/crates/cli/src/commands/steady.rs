use num_complex::Complex64 as C64;
use rayon::prelude::*;

use enzq::concurrence::wootters_concurrence;
use enzq::dynamics::{dicke_initial_state, evolve, steady_state, LindbladGenerator};
use enzq::model::{PumpDrive, TimeGrid};

use crate::config::{merge, require, SteadySection};
use crate::output::{linspace, parse_complex, CsvDoc};
use crate::source::{self, SourceParams};
use crate::{data_err, CliError, RunContext};

pub struct Flags {
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

fn scheme_pump(
    name: &str,
    omega1: Option<&str>,
    omega2: Option<&str>,
    detuning: f64,
) -> Result<PumpDrive, CliError> {
    let preset = match name {
        "asymmetric" => PumpDrive::asymmetric(),
        "symmetric" => PumpDrive::symmetric(),
        "antisymmetric" => PumpDrive::antisymmetric(),
        "custom" => {
            let o1 = omega1
                .map(|raw| parse_complex(raw, "omega1"))
                .transpose()?
                .unwrap_or(C64::new(0.0, 0.0));
            let o2 = omega2
                .map(|raw| parse_complex(raw, "omega2"))
                .transpose()?
                .unwrap_or(C64::new(0.0, 0.0));
            PumpDrive::new(o1, o2, detuning).map_err(crate::config_err)?
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown scheme {other:?}; expected asymmetric, symmetric, antisymmetric, or custom"
            )))
        }
    };
    if name != "custom" && detuning != 0.0 {
        return PumpDrive::new(preset.omega1, preset.omega2, detuning).map_err(crate::config_err);
    }
    Ok(preset)
}

fn fmt_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

pub fn run(ctx: &RunContext, file: &SteadySection, flags: Flags) -> Result<(), CliError> {
    let source_spec = require(flags.source.clone(), file.source.clone(), "source")?;
    let params = SourceParams {
        gamma12: flags.gamma12.or(file.gamma12),
        g12: flags.g12.or(file.g12),
        index: merge(flags.index, file.index, 1.0),
        lambda_nm: merge(flags.lambda_nm, file.lambda_nm, 0.0),
    };
    let source = source::parse(&source_spec, &params, false)?;

    let schemes = merge(
        flags.schemes.clone(),
        file.schemes.clone(),
        vec![
            "asymmetric".to_string(),
            "symmetric".to_string(),
            "antisymmetric".to_string(),
        ],
    );
    if schemes.is_empty() {
        return Err(CliError::Config("`schemes` list is empty".into()));
    }
    let detuning = merge(flags.detuning, file.detuning, 0.0);
    let omega1 = flags.omega1.clone().or(file.omega1.clone());
    let omega2 = flags.omega2.clone().or(file.omega2.clone());

    let r_values = merge(flags.r.clone(), file.r.clone(), vec![0.5]);
    if r_values.is_empty() {
        return Err(CliError::Config("`r` list is empty".into()));
    }
    source::check_separations(&r_values, &source)?;
    let t_max = merge(flags.t_max, file.t_max, 60.0);
    let t_steps = merge(flags.t_steps, file.t_steps, 240);
    let times = linspace(0.0, t_max, t_steps)?;
    let grid = TimeGrid::new(times.clone()).map_err(data_err)?;

    let mut doc = CsvDoc::new("steady");
    doc.meta(&format!("source = {source_spec}"));
    let mut pumps = Vec::new();
    for name in &schemes {
        let pump = scheme_pump(name, omega1.as_deref(), omega2.as_deref(), detuning)?;
        doc.meta(&format!(
            "scheme {name}: omega1 = {}, omega2 = {}, detuning = {}",
            fmt_complex(pump.omega1),
            fmt_complex(pump.omega2),
            pump.detuning
        ));
        pumps.push((name.clone(), pump));
    }
    doc.meta("c_infinity from the null-space solve of the vectorized generator");

    struct Cell {
        scheme: String,
        r: f64,
        curve: Vec<f64>,
        c_inf: f64,
    }

    let cells: Vec<Result<Cell, CliError>> = pumps
        .par_iter()
        .flat_map(|(name, pump)| {
            let times = &times;
            let grid = &grid;
            let source = &source;
            r_values.par_iter().map(move |&r| {
                let coupling = source::resolve(source, r)?;
                let gen = LindbladGenerator::new(coupling, *pump);
                let stationary = steady_state(&gen).map_err(data_err)?;
                let c_inf = wootters_concurrence(&stationary).map_err(data_err)?;
                let traj = evolve(&dicke_initial_state(), &gen, grid, &ctx.integrator())
                    .map_err(data_err)?;
                let curve = traj.concurrences().map_err(data_err)?;
                let _ = times;
                Ok(Cell {
                    scheme: name.clone(),
                    r,
                    curve,
                    c_inf,
                })
            })
        })
        .collect();

    doc.header("scheme,r_over_lambda,t_gamma,concurrence,c_infinity");
    for cell in cells {
        let cell = cell?;
        for (t, c) in times.iter().zip(&cell.curve) {
            doc.row_with_label(&cell.scheme, &[cell.r, *t, *c, cell.c_inf]);
        }
    }
    doc.write_to(ctx.out.as_deref())
}
