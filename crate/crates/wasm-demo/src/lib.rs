//! Interactive browser demo backed by the core library.
//!
//! Exposes three explorable operations to `index.html`: transient
//! concurrence of the unpumped pair, pumped dynamics with the steady value
//! from the null-space solve, and circular-guide dispersion. Inputs are
//! sanitized rather than rejected so slider-driven calls are total.

use wasm_bindgen::prelude::wasm_bindgen;

use enzq::dynamics::{
    dicke_initial_state, evolve, steady_state, transient_concurrence_closed_form,
    IntegratorOptions, LindbladGenerator,
};
use enzq::model::{CouplingParameters, PumpDrive, TimeGrid};
use enzq::vacuum::{vacuum_g12, vacuum_gamma12};
use enzq::waveguide::{cutoff_wavelength, effective_index, GuideGeometry};

fn sanitized_coupling(gamma12: f64, g12: f64) -> CouplingParameters {
    let gamma12 = if gamma12.is_finite() {
        gamma12.clamp(-1.0, 1.0)
    } else {
        0.0
    };
    let g12 = if g12.is_finite() { g12 } else { 0.0 };
    CouplingParameters::normalized(gamma12, g12).expect("sanitized inputs")
}

fn time_grid(t_max: f64, samples: usize) -> TimeGrid {
    let t_max = if t_max.is_finite() && t_max > 0.0 {
        t_max
    } else {
        10.0
    };
    TimeGrid::linspace(t_max, samples.clamp(2, 4096)).expect("sanitized grid")
}

/// Closed-form transient concurrence of the unpumped pair from the
/// single-excitation state, sampled on `[0, t_max]`.
#[wasm_bindgen]
pub fn transient_curve(gamma12: f64, g12: f64, t_max: f64, samples: usize) -> Vec<f64> {
    let coupling = sanitized_coupling(gamma12, g12);
    time_grid(t_max, samples)
        .samples()
        .iter()
        .map(|&t| transient_concurrence_closed_form(&coupling, t))
        .collect()
}

/// Pumped concurrence over time. `scheme`: 0 asymmetric (Ω₁ = 0.4γ),
/// 1 symmetric (0.2γ each), 2 antisymmetric (±0.2γ), 3 off.
#[wasm_bindgen]
pub fn pumped_curve(scheme: u32, gamma12: f64, g12: f64, t_max: f64, samples: usize) -> Vec<f64> {
    let coupling = sanitized_coupling(gamma12, g12);
    let pump = match scheme {
        0 => PumpDrive::asymmetric(),
        1 => PumpDrive::symmetric(),
        2 => PumpDrive::antisymmetric(),
        _ => PumpDrive::off(),
    };
    let gen = LindbladGenerator::new(coupling, pump);
    let grid = time_grid(t_max, samples);
    match evolve(
        &dicke_initial_state(),
        &gen,
        &grid,
        &IntegratorOptions::default(),
    ) {
        Ok(traj) => traj.concurrences().unwrap_or_default(),
        Err(_) => Vec::new(),
    }
}

/// Steady concurrence from the null-space solve; NaN when the steady
/// manifold is degenerate (e.g. γ₁₂ = γ without a pump).
#[wasm_bindgen]
pub fn steady_concurrence(scheme: u32, gamma12: f64, g12: f64) -> f64 {
    let coupling = sanitized_coupling(gamma12, g12);
    let pump = match scheme {
        0 => PumpDrive::asymmetric(),
        1 => PumpDrive::symmetric(),
        2 => PumpDrive::antisymmetric(),
        _ => PumpDrive::off(),
    };
    let gen = LindbladGenerator::new(coupling, pump);
    steady_state(&gen)
        .and_then(|rho| enzq::wootters_concurrence(&rho))
        .unwrap_or(f64::NAN)
}

/// Complex effective index over `[lambda_min, lambda_max]`, interleaved
/// as `[re0, im0, re1, im1, …]`.
#[wasm_bindgen]
pub fn dispersion_curve(
    diameter_nm: f64,
    mode_root: f64,
    lambda_min: f64,
    lambda_max: f64,
    samples: usize,
) -> Vec<f64> {
    let Ok(geom) = GuideGeometry::new(diameter_nm, mode_root) else {
        return Vec::new();
    };
    let n = samples.clamp(2, 4096);
    let (lo, hi) = if lambda_max > lambda_min && lambda_min > 0.0 {
        (lambda_min, lambda_max)
    } else {
        (200.0, 3000.0)
    };
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let lambda = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        match effective_index(lambda, &geom) {
            Ok(idx) => {
                out.push(idx.re);
                out.push(idx.im);
            }
            Err(_) => {
                out.push(f64::NAN);
                out.push(f64::NAN);
            }
        }
    }
    out
}

/// Cutoff wavelength (nm) for the sliders' readout.
#[wasm_bindgen]
pub fn cutoff_nm(diameter_nm: f64, mode_root: f64) -> f64 {
    GuideGeometry::new(diameter_nm, mode_root)
        .map(|g| cutoff_wavelength(&g))
        .unwrap_or(f64::NAN)
}

/// Free-space coupling `[γ₁₂/γ₀, g₁₂/γ₀]` at separation `r/λ₀` in a
/// medium of index `n` — lets the demo preset the coupling sliders from a
/// physical scenario.
#[wasm_bindgen]
pub fn vacuum_coupling_at(r_over_lambda: f64, index: f64) -> Vec<f64> {
    let x = 2.0 * std::f64::consts::PI * index * r_over_lambda;
    match (vacuum_gamma12(x), vacuum_g12(x)) {
        (Ok(g), Ok(s)) => vec![g, s],
        _ => vec![f64::NAN, f64::NAN],
    }
}
