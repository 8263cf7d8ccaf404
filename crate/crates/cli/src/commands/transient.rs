use rayon::prelude::*;

use enzq::dynamics::{
    dicke_initial_state, evolve, transient_concurrence_closed_form, LindbladGenerator,
};
use enzq::model::{CouplingParameters, TimeGrid};
use enzq::table::coupling_at;

use crate::config::{merge, require, TransientSection};
use crate::output::{linspace, CsvDoc};
use crate::source::{self, Source, SourceParams};
use crate::{data_err, CliError, RunContext};

pub struct Flags {
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

#[derive(Clone, Copy, PartialEq)]
enum Method {
    Evolve,
    ClosedForm,
}

/// One heatmap column: concurrence over the time grid at fixed coupling.
fn concurrence_column(
    coupling: CouplingParameters,
    times: &[f64],
    method: Method,
    ctx: &RunContext,
) -> Result<Vec<f64>, CliError> {
    match method {
        Method::ClosedForm => Ok(times
            .iter()
            .map(|&t| transient_concurrence_closed_form(&coupling, t))
            .collect()),
        Method::Evolve => {
            let gen = LindbladGenerator::unpumped(coupling);
            let grid = TimeGrid::new(times.to_vec()).map_err(data_err)?;
            let traj =
                evolve(&dicke_initial_state(), &gen, &grid, &ctx.integrator()).map_err(data_err)?;
            traj.concurrences().map_err(data_err)
        }
    }
}

pub fn run(ctx: &RunContext, file: &TransientSection, flags: Flags) -> Result<(), CliError> {
    let source_spec = require(flags.source.clone(), file.source.clone(), "source")?;
    let params = SourceParams {
        gamma12: flags.gamma12.or(file.gamma12),
        g12: flags.g12.or(file.g12),
        index: merge(flags.index, file.index, 1.0),
        lambda_nm: merge(flags.lambda_nm, file.lambda_nm, 0.0),
    };
    let source = source::parse(&source_spec, &params, true)?;

    let method_name = merge(
        flags.method.clone(),
        file.method.clone(),
        match source {
            Source::Params(_) => "closed-form".to_string(),
            _ => "evolve".to_string(),
        },
    );
    let method = match method_name.as_str() {
        "evolve" => Method::Evolve,
        "closed-form" => Method::ClosedForm,
        other => {
            return Err(CliError::Config(format!(
                "unknown method {other:?}; expected evolve or closed-form"
            )))
        }
    };

    let t_max = merge(flags.t_max, file.t_max, 10.0);
    let t_steps = merge(flags.t_steps, file.t_steps, 100);
    let times = linspace(0.0, t_max, t_steps)?;

    let single_r = flags.r.or(file.r);
    let r_grid: Vec<f64> = match single_r {
        Some(r) => vec![r],
        None => {
            if matches!(source, Source::Params(_)) {
                // coupling is explicit: the separation axis is meaningless
                vec![f64::NAN]
            } else {
                let r_min = require(flags.r_min, file.r_min, "r or r_min")?;
                let r_max = require(flags.r_max, file.r_max, "r_max")?;
                let r_steps = merge(flags.r_steps, file.r_steps, 50);
                linspace(r_min, r_max, r_steps)?
            }
        }
    };
    if !matches!(source, Source::Params(_)) {
        crate::source::check_separations(&r_grid, &source)?;
    }

    let mut doc = CsvDoc::new("transient");
    doc.meta(&format!("source = {source_spec}"));
    doc.meta(&format!("method = {method_name}"));
    doc.meta(&format!("t grid: [0, {t_max}], {t_steps} steps"));

    match &source {
        Source::Params(coupling) => {
            doc.meta(&format!(
                "coupling: gamma12 = {}, g12 = {}",
                coupling.gamma12(),
                coupling.g12()
            ));
            let cs = concurrence_column(*coupling, &times, method, ctx)?;
            doc.header("t_gamma,concurrence");
            for (t, c) in times.iter().zip(cs) {
                doc.row(&[*t, c]);
            }
        }
        Source::Vacuum { .. } | Source::Table(_) => {
            let columns: Vec<Result<Vec<f64>, CliError>> = r_grid
                .par_iter()
                .map(|&r| {
                    let coupling = source::resolve(&source, r)?;
                    concurrence_column(coupling, &times, method, ctx)
                })
                .collect();
            if r_grid.len() == 1 {
                doc.meta(&format!("r/lambda0 = {}", r_grid[0]));
                doc.header("t_gamma,concurrence");
                let cs = columns.into_iter().next().unwrap()?;
                for (t, c) in times.iter().zip(cs) {
                    doc.row(&[*t, c]);
                }
            } else {
                doc.header("r_over_lambda,t_gamma,concurrence");
                for (r, column) in r_grid.iter().zip(columns) {
                    for (t, c) in times.iter().zip(column?) {
                        doc.row(&[*r, *t, c]);
                    }
                }
            }
        }
        Source::Manifest(tables) => {
            let cells: Vec<(f64, f64)> = tables
                .iter()
                .flat_map(|table| r_grid.iter().map(|&r| (table.lambda_nm, r)))
                .collect();
            let times_ref = &times;
            let columns: Vec<Result<Vec<f64>, CliError>> = tables
                .par_iter()
                .flat_map(|table| {
                    r_grid.par_iter().map(move |&r| {
                        let coupling = coupling_at(table, r).map_err(data_err)?;
                        concurrence_column(coupling, times_ref, method, ctx)
                    })
                })
                .collect();
            doc.header("lambda_nm,r_over_lambda,t_gamma,concurrence");
            for ((lambda, r), column) in cells.iter().zip(columns) {
                for (t, c) in times.iter().zip(column?) {
                    doc.row(&[*lambda, *r, *t, c]);
                }
            }
        }
    }
    doc.write_to(ctx.out.as_deref())
}
