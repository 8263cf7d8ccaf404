//! Free-space coupling parameters and collective-channel populations.
//!
//! For two y-polarized emitters separated by `r₁₂` in a homogeneous medium
//! of index `n`, with `x = k r₁₂ = 2πn (r₁₂/λ₀)`:
//!
//! ```text
//! γ₁₂(x)/γ₀ = (3/2) (sin x / x + cos x / x² − sin x / x³)
//! g₁₂(x)/γ₀ = (3/4) (cos x / x − sin x / x² − cos x / x³)
//! ```
//!
//! `γ₁₂` extends continuously to `x = 0` with value `γ₀`; `g₁₂` diverges
//! as `−(3/4)/x³` at contact.

use crate::error::Error;
use crate::model::CouplingParameters;
use crate::Result;

/// Below this argument the three-term expression for `γ₁₂` loses all
/// precision to cancellation and a Taylor series is used instead.
const SERIES_THRESHOLD: f64 = 1e-3;

/// Cross-damping rate `γ₁₂/γ₀` at dimensionless separation `x = k·r₁₂`.
///
/// `x = 0` returns the analytic limit 1; small arguments switch to the
/// series `1 − x²/5 + 3x⁴/280 − x⁶/3780`.
pub fn vacuum_gamma12(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "k·r must be non-negative and finite, got {x}"
        )));
    }
    if x < SERIES_THRESHOLD {
        let x2 = x * x;
        return Ok(1.0 - x2 / 5.0 + 3.0 * x2 * x2 / 280.0 - x2 * x2 * x2 / 3780.0);
    }
    let (s, c) = x.sin_cos();
    Ok(1.5 * (s / x + c / (x * x) - s / (x * x * x)))
}

/// Coherent dipole-dipole shift `g₁₂/γ₀` at `x = k·r₁₂ > 0`.
pub fn vacuum_g12(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::SingularInput(format!(
            "g₁₂ diverges at contact; k·r must be positive, got {x}"
        )));
    }
    let (s, c) = x.sin_cos();
    Ok(0.75 * (c / x - s / (x * x) - c / (x * x * x)))
}

/// Populations of the symmetric and antisymmetric collective channels at
/// normalized time `tγ`, given `β = γ₁₂/γ` with `|β| < 1`:
///
/// ```text
/// n_s(t) = (1+β)[1 − (1−β)⁻¹ e^{−2t}(e^{(1−β)t} − β)]
/// n_a(t) = (1−β)[1 − (1+β)⁻¹ e^{−2t}(e^{(1+β)t} + β)]
/// ```
///
/// Both vanish at `t = 0` and approach `1 ± β` as `t → ∞`.
pub fn channel_populations(t: f64, beta: f64) -> Result<(f64, f64)> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "time must be non-negative, got {t}"
        )));
    }
    if !(beta.abs() < 1.0) {
        return Err(Error::SingularInput(format!(
            "channel populations are singular at |γ₁₂/γ| = 1, got β = {beta}"
        )));
    }
    let e2 = (-2.0 * t).exp();
    let n_s = (1.0 + beta) * (1.0 - (e2 * (((1.0 - beta) * t).exp() - beta)) / (1.0 - beta));
    let n_a = (1.0 - beta) * (1.0 - (e2 * (((1.0 + beta) * t).exp() + beta)) / (1.0 + beta));
    Ok((n_s, n_a))
}

/// One sample of the free-space coupling curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumCouplingPoint {
    pub r_over_lambda: f64,
    /// γ₁₂/γ₀
    pub gamma12: f64,
    /// g₁₂/γ₀
    pub g12: f64,
}

/// Evaluate both free-space formulas on a grid of normalized separations
/// `r₁₂/λ₀` in a medium of refractive index `n` (`x = 2πn·r/λ₀`).
pub fn vacuum_coupling_curve(
    r_over_lambda: &[f64],
    refractive_index: f64,
) -> Result<Vec<VacuumCouplingPoint>> {
    if !(refractive_index > 0.0) || !refractive_index.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "refractive index must be positive, got {refractive_index}"
        )));
    }
    r_over_lambda
        .iter()
        .map(|&r| {
            if !(r > 0.0) {
                return Err(Error::SingularInput(format!(
                    "r/λ₀ must be positive, got {r}"
                )));
            }
            let x = 2.0 * std::f64::consts::PI * refractive_index * r;
            Ok(VacuumCouplingPoint {
                r_over_lambda: r,
                gamma12: vacuum_gamma12(x)?,
                g12: vacuum_g12(x)?,
            })
        })
        .collect()
}

/// Free-space [`CouplingParameters`] (γ = γ₀ = 1) at a single separation.
///
/// Roundoff pushing `|γ₁₂|` marginally past 1 is clamped back to the
/// physical bound.
pub fn vacuum_coupling(r_over_lambda: f64, refractive_index: f64) -> Result<CouplingParameters> {
    let point = vacuum_coupling_curve(&[r_over_lambda], refractive_index)?[0];
    CouplingParameters::normalized(point.gamma12.clamp(-1.0, 1.0), point.g12)
}
