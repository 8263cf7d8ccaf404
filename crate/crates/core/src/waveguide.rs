//! Analytic dispersion of a circular hollow waveguide.
//!
//! The effective index of a guided mode with Bessel root `u_nm` in a core
//! of radius `ρ = D/2` is
//!
//! ```text
//! n_eff(λ) = sqrt(1 − (u_nm/π)² (λ/2ρ)²)
//! ```
//!
//! which is purely real below the cutoff wavelength `λ_c = πD/u_nm` and
//! purely imaginary (evanescent) above it. The index is returned as a
//! complex number on the principal branch rather than clamped, so the
//! evanescent side stays available to downstream tooling.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

/// Mode root quoted for the fundamental mode of the structures this tool
/// targets.
pub const DEFAULT_MODE_ROOT: f64 = 3.832;

/// Conventional TE₁₁ cutoff root (first zero of J₁′) for comparison runs.
pub const TE11_MODE_ROOT: f64 = 1.841;

/// Circular-guide geometry: core diameter and the Bessel root of the mode
/// under study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuideGeometry {
    diameter_nm: f64,
    mode_root: f64,
}

impl GuideGeometry {
    pub fn new(diameter_nm: f64, mode_root: f64) -> Result<Self> {
        if !(diameter_nm > 0.0) || !diameter_nm.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "diameter must be positive, got {diameter_nm} nm"
            )));
        }
        if !(mode_root > 0.0) || !mode_root.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mode root must be positive, got {mode_root}"
            )));
        }
        Ok(Self {
            diameter_nm,
            mode_root,
        })
    }

    pub fn diameter_nm(&self) -> f64 {
        self.diameter_nm
    }

    pub fn mode_root(&self) -> f64 {
        self.mode_root
    }
}

/// Complex effective index at wavelength `lambda_nm`.
///
/// Real below cutoff, imaginary above it; never both at once.
pub fn effective_index(lambda_nm: f64, geom: &GuideGeometry) -> Result<Complex64> {
    if !(lambda_nm > 0.0) || !lambda_nm.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "wavelength must be positive, got {lambda_nm} nm"
        )));
    }
    let ratio = (geom.mode_root / std::f64::consts::PI) * (lambda_nm / geom.diameter_nm);
    let arg = 1.0 - ratio * ratio;
    // a wavelength equal to the computed cutoff leaves |arg| at a few ulps;
    // the square root would amplify that to ~1e-8, so snap the algebraic
    // zero exactly
    if arg.abs() < 1e-13 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(if arg >= 0.0 {
        Complex64::new(arg.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-arg).sqrt())
    })
}

/// Cutoff wavelength `λ_c = πD/u_nm` where the effective index crosses zero.
pub fn cutoff_wavelength(geom: &GuideGeometry) -> f64 {
    std::f64::consts::PI * geom.diameter_nm / geom.mode_root
}

/// One grid cell of a dispersion sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    pub diameter_nm: f64,
    pub lambda_nm: f64,
    pub n_eff: Complex64,
}

/// Row-major sweep of [`effective_index`] over a (diameter, wavelength)
/// grid at fixed mode root.
pub fn dispersion_curve(
    diameters_nm: &[f64],
    lambdas_nm: &[f64],
    mode_root: f64,
) -> Result<Vec<DispersionPoint>> {
    if diameters_nm.is_empty() {
        return Err(Error::InvalidParameter("diameter grid is empty".into()));
    }
    if lambdas_nm.is_empty() {
        return Err(Error::InvalidParameter("wavelength grid is empty".into()));
    }
    let mut out = Vec::with_capacity(diameters_nm.len() * lambdas_nm.len());
    for &d in diameters_nm {
        let geom = GuideGeometry::new(d, mode_root)?;
        for &lam in lambdas_nm {
            out.push(DispersionPoint {
                diameter_nm: d,
                lambda_nm: lam,
                n_eff: effective_index(lam, &geom)?,
            });
        }
    }
    Ok(out)
}
