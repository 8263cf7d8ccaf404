use enzq::dynamics::transient_concurrence_closed_form;
use enzq::vacuum::{channel_populations, vacuum_coupling, vacuum_coupling_curve};

use crate::config::{merge, require, VacuumSection};
use crate::output::{linspace, CsvDoc};
use crate::{data_err, CliError, RunContext};

pub struct Flags {
    pub channels: bool,
    pub concurrence: bool,
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

pub fn run(ctx: &RunContext, file: &VacuumSection, flags: Flags) -> Result<(), CliError> {
    if flags.channels && flags.concurrence {
        return Err(CliError::Config(
            "`--channels` and `--concurrence` are mutually exclusive".into(),
        ));
    }
    if flags.channels {
        return channels(ctx, file, &flags);
    }
    if flags.concurrence {
        return concurrence_sweep(ctx, file, &flags);
    }
    coupling_curve(ctx, file, &flags)
}

fn coupling_curve(ctx: &RunContext, file: &VacuumSection, flags: &Flags) -> Result<(), CliError> {
    let r_min = merge(flags.r_min, file.r_min, 0.05);
    let r_max = merge(flags.r_max, file.r_max, 2.0);
    let r_steps = merge(flags.r_steps, file.r_steps, 100);
    let index = merge(flags.index, file.index, 1.0);

    let grid = linspace(r_min, r_max, r_steps)?;
    let points = vacuum_coupling_curve(&grid, index).map_err(data_err)?;

    let mut doc = CsvDoc::new("vacuum");
    doc.meta(&format!("refractive index n = {index}"));
    doc.header("r_over_lambda,gamma12_over_gamma0,g12_over_gamma0");
    for p in points {
        doc.row(&[p.r_over_lambda, p.gamma12, p.g12]);
    }
    doc.write_to(ctx.out.as_deref())
}

fn channels(ctx: &RunContext, file: &VacuumSection, flags: &Flags) -> Result<(), CliError> {
    let beta = require(flags.beta, file.beta, "beta")?;
    let t_max = merge(flags.t_max, file.t_max, 50.0);
    let t_steps = merge(flags.t_steps, file.t_steps, 200);
    let grid = linspace(0.0, t_max, t_steps)?;

    let mut doc = CsvDoc::new("vacuum --channels");
    doc.meta(&format!("beta = gamma12/gamma = {beta}"));
    doc.header("t_gamma,n_s,n_a");
    for t in grid {
        let (ns, na) = channel_populations(t, beta).map_err(data_err)?;
        doc.row(&[t, ns, na]);
    }
    doc.write_to(ctx.out.as_deref())
}

fn concurrence_sweep(
    ctx: &RunContext,
    file: &VacuumSection,
    flags: &Flags,
) -> Result<(), CliError> {
    let indices = require(flags.indices.clone(), file.indices.clone(), "indices")?;
    if indices.is_empty() {
        return Err(CliError::Config("`indices` list is empty".into()));
    }
    let r = merge(flags.r, file.r, 0.5);
    let t_max = merge(flags.t_max, file.t_max, 5.0);
    let t_steps = merge(flags.t_steps, file.t_steps, 100);
    let grid = linspace(0.0, t_max, t_steps)?;

    let mut doc = CsvDoc::new("vacuum --concurrence");
    doc.meta(&format!("separation r/lambda0 = {r}"));
    doc.meta("transient concurrence of the unpumped pair (closed form)");
    doc.header("n,t_gamma,concurrence");
    for &n in &indices {
        let coupling = vacuum_coupling(r, n).map_err(data_err)?;
        for &t in &grid {
            doc.row(&[n, t, transient_concurrence_closed_form(&coupling, t)]);
        }
    }
    doc.write_to(ctx.out.as_deref())
}
