//! `enzq` — parameter sweeps, data ingestion, and plot-ready CSV emission
//! for two-qubit entanglement in structured photonic reservoirs.
//!
//! Exit codes: 0 success, 2 configuration error, 3 I/O error,
//! 4 data-validation error.

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;
mod source;

use config::FileConfig;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Data(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Data(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Data(m) => write!(f, "data validation error: {m}"),
        }
    }
}

/// Map a core-library error according to where the offending value came
/// from: file contents are data errors, everything else configuration.
pub fn data_err(e: enzq::Error) -> CliError {
    match e {
        enzq::Error::Io(io) => CliError::Io(io.to_string()),
        other => CliError::Data(other.to_string()),
    }
}

pub fn config_err(e: enzq::Error) -> CliError {
    CliError::Config(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "enzq",
    version,
    about = "Two-qubit entanglement in structured photonic reservoirs: dispersion, coupling, and concurrence sweeps"
)]
struct Cli {
    /// TOML configuration file; command-line flags override file values
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Fixed-step integration: identical invocations produce byte-identical files
    #[arg(long, global = true)]
    deterministic: bool,

    /// Relative tolerance of the adaptive integrator
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Effective-index dispersion of a circular hollow waveguide
    Dispersion {
        /// Core diameters in nm, comma separated
        #[arg(long, value_delimiter = ',')]
        diameters: Option<Vec<f64>>,
        /// Wavelength sweep start (nm)
        #[arg(long)]
        lambda_min: Option<f64>,
        /// Wavelength sweep end (nm)
        #[arg(long)]
        lambda_max: Option<f64>,
        /// Wavelength step (nm)
        #[arg(long)]
        lambda_step: Option<f64>,
        /// Bessel root of the mode under study
        #[arg(long)]
        mode_root: Option<f64>,
    },
    /// Free-space coupling curves, collective-channel populations, and
    /// refractive-index concurrence sweeps
    Vacuum {
        /// Emit channel populations n_s, n_a instead of the coupling curve
        #[arg(long)]
        channels: bool,
        /// Emit a refractive-index concurrence heatmap instead of the curve
        #[arg(long)]
        concurrence: bool,
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        r_steps: Option<usize>,
        /// Refractive index for the coupling curve
        #[arg(long)]
        index: Option<f64>,
        /// Refractive indices for the concurrence sweep, comma separated
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<f64>>,
        /// γ₁₂/γ for the channel populations
        #[arg(long)]
        beta: Option<f64>,
        /// Separation r/λ₀ for the concurrence sweep
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        t_steps: Option<usize>,
    },
    /// Transient concurrence curves and heatmaps
    Transient {
        /// Coupling source: closed-form | vacuum | table:<path> | manifest:<path>
        #[arg(long)]
        source: Option<String>,
        /// Concurrence method: evolve | closed-form
        #[arg(long)]
        method: Option<String>,
        /// γ₁₂/γ for the closed-form source
        #[arg(long)]
        gamma12: Option<f64>,
        /// g₁₂/γ for the closed-form source
        #[arg(long)]
        g12: Option<f64>,
        /// Refractive index for the vacuum source
        #[arg(long)]
        index: Option<f64>,
        /// Wavelength label for a bare table source (nm)
        #[arg(long)]
        lambda_nm: Option<f64>,
        /// Single separation r/λ₀ (emits a curve)
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        r_steps: Option<usize>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        t_steps: Option<usize>,
    },
    /// Pumped concurrence curves with the steady value from the null-space solve
    Steady {
        /// Coupling source: closed-form | vacuum | table:<path>
        #[arg(long)]
        source: Option<String>,
        /// Pump schemes: asymmetric | symmetric | antisymmetric | custom (comma separated)
        #[arg(long, value_delimiter = ',')]
        schemes: Option<Vec<String>>,
        #[arg(long)]
        gamma12: Option<f64>,
        #[arg(long)]
        g12: Option<f64>,
        #[arg(long)]
        index: Option<f64>,
        #[arg(long)]
        lambda_nm: Option<f64>,
        /// Separations r/λ₀, comma separated
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<f64>>,
        /// Ω₁/γ for the custom scheme: `re` or `re,im`
        #[arg(long)]
        omega1: Option<String>,
        /// Ω₂/γ for the custom scheme
        #[arg(long)]
        omega2: Option<String>,
        /// Pump detuning Δ/γ
        #[arg(long)]
        detuning: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        t_steps: Option<usize>,
    },
    /// Driven single-qubit population dynamics over a Rabi-frequency grid
    Rabi {
        /// Normalized Rabi frequencies α = Ω/Γ, comma separated
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        t_steps: Option<usize>,
        /// Add a master-equation column next to the closed form
        #[arg(long)]
        crosscheck: bool,
    },
    /// Validate a coupling table CSV or manifest and print statistics
    Ingest {
        /// Path to a coupling CSV or a `.json` manifest
        path: PathBuf,
        /// Wavelength label for a bare CSV (nm)
        #[arg(long)]
        lambda_nm: Option<f64>,
    },
}

/// Options shared by every subcommand after merging flags and file.
pub struct RunContext {
    pub out: Option<PathBuf>,
    pub deterministic: bool,
    pub rel_tol: f64,
}

impl RunContext {
    pub fn integrator(&self) -> enzq::IntegratorOptions {
        if self.deterministic {
            enzq::IntegratorOptions::fixed_step(1e-3)
        } else {
            enzq::IntegratorOptions::with_rel_tol(self.rel_tol)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = FileConfig::load(cli.config.as_deref())?;
    let ctx = RunContext {
        out: cli.out,
        deterministic: cli.deterministic || file.deterministic.unwrap_or(false),
        rel_tol: config::merge(cli.tol, file.tol, 1e-9),
    };
    if !(ctx.rel_tol > 0.0) || !ctx.rel_tol.is_finite() {
        return Err(CliError::Config(format!(
            "tolerance must be positive, got {}",
            ctx.rel_tol
        )));
    }

    match cli.command {
        Command::Dispersion {
            diameters,
            lambda_min,
            lambda_max,
            lambda_step,
            mode_root,
        } => commands::dispersion::run(
            &ctx,
            &file.dispersion,
            diameters,
            lambda_min,
            lambda_max,
            lambda_step,
            mode_root,
        ),
        Command::Vacuum {
            channels,
            concurrence,
            r_min,
            r_max,
            r_steps,
            index,
            indices,
            beta,
            r,
            t_max,
            t_steps,
        } => commands::vacuum::run(
            &ctx,
            &file.vacuum,
            commands::vacuum::Flags {
                channels,
                concurrence,
                r_min,
                r_max,
                r_steps,
                index,
                indices,
                beta,
                r,
                t_max,
                t_steps,
            },
        ),
        Command::Transient {
            source,
            method,
            gamma12,
            g12,
            index,
            lambda_nm,
            r,
            r_min,
            r_max,
            r_steps,
            t_max,
            t_steps,
        } => commands::transient::run(
            &ctx,
            &file.transient,
            commands::transient::Flags {
                source,
                method,
                gamma12,
                g12,
                index,
                lambda_nm,
                r,
                r_min,
                r_max,
                r_steps,
                t_max,
                t_steps,
            },
        ),
        Command::Steady {
            source,
            schemes,
            gamma12,
            g12,
            index,
            lambda_nm,
            r,
            omega1,
            omega2,
            detuning,
            t_max,
            t_steps,
        } => commands::steady::run(
            &ctx,
            &file.steady,
            commands::steady::Flags {
                source,
                schemes,
                gamma12,
                g12,
                index,
                lambda_nm,
                r,
                omega1,
                omega2,
                detuning,
                t_max,
                t_steps,
            },
        ),
        Command::Rabi {
            alphas,
            t_max,
            t_steps,
            crosscheck,
        } => commands::rabi::run(&ctx, &file.rabi, alphas, t_max, t_steps, crosscheck),
        Command::Ingest { path, lambda_nm } => commands::ingest::run(&path, lambda_nm),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("enzq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
