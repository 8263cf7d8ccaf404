//! Conversion of externally computed field / Green's-function data into
//! coupling parameters, LDOS, and Purcell factors.
//!
//! The dyadic Green's function `G(rᵢ, rⱼ, ω)` is a classical response
//! tensor; its projection on the emitter dipole moments gives the
//! dissipative and coherent coupling rates
//!
//! ```text
//! γᵢⱼ = (2ω₀²/ε₀ħc²) Im[μᵢ* · G · μⱼ]
//! gᵢⱼ = ( ω₀²/ε₀ħc²) Re[μᵢ* · G · μⱼ]
//! ```
//!
//! The free-space reference `Im G_vac = ω/(6πc)` reproduces the vacuum
//! decay rate `γ₀ = ω³μ²/(3πε₀ħc³)` through the first formula and is the
//! normalization used for Purcell factors.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

type C64 = Complex64;

/// CODATA values used by the SI constructors.
pub mod constants {
    /// Vacuum permittivity (F/m).
    pub const EPS0: f64 = 8.854_187_812_8e-12;
    /// Reduced Planck constant (J·s).
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Speed of light (m/s).
    pub const C: f64 = 299_792_458.0;
}

/// Physical context for dimensional conversions: transition frequency,
/// constants, dipole moments, and the relative permittivity at the field
/// record point.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalContext {
    pub omega0: f64,
    pub eps0: f64,
    pub hbar: f64,
    pub c: f64,
    /// Dipole moment of emitter i (C·m per component).
    pub dipole_i: [C64; 3],
    /// Dipole moment of emitter j.
    pub dipole_j: [C64; 3],
    /// Relative permittivity at the record point.
    pub eps_r: f64,
}

impl PhysicalContext {
    pub fn new(
        omega0: f64,
        eps0: f64,
        hbar: f64,
        c: f64,
        dipole_i: [C64; 3],
        dipole_j: [C64; 3],
        eps_r: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("omega0", omega0),
            ("eps0", eps0),
            ("hbar", hbar),
            ("c", c),
            ("eps_r", eps_r),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        let norm = |d: &[C64; 3]| d.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm(&dipole_i) == 0.0 || norm(&dipole_j) == 0.0 {
            return Err(Error::InvalidParameter(
                "dipole moments must be non-zero".into(),
            ));
        }
        Ok(Self {
            omega0,
            eps0,
            hbar,
            c,
            dipole_i,
            dipole_j,
            eps_r,
        })
    }

    /// SI constants, identical y-aligned dipoles of magnitude `mu` (C·m).
    pub fn si_y_aligned(omega0: f64, mu: f64) -> Result<Self> {
        let d = [C64::new(0.0, 0.0), C64::new(mu, 0.0), C64::new(0.0, 0.0)];
        Self::new(
            omega0,
            constants::EPS0,
            constants::HBAR,
            constants::C,
            d,
            d,
            1.0,
        )
    }

    /// All constants set to one, unit y-aligned dipoles — convenient for
    /// formula-level checks.
    pub fn unit_y_aligned() -> Self {
        let d = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        Self {
            omega0: 1.0,
            eps0: 1.0,
            hbar: 1.0,
            c: 1.0,
            dipole_i: d,
            dipole_j: d,
            eps_r: 1.0,
        }
    }

    fn dipole_magnitude_i(&self) -> f64 {
        self.dipole_i
            .iter()
            .map(|x| x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Green's tensor sample: either the single recorded `G_yy` component or
/// the full tensor when the solver exports all orientations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GreensTensor {
    Yy(C64),
    Full([[C64; 3]; 3]),
}

/// One Green's-function record exported by a field solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensSample {
    pub r_i: [f64; 3],
    pub r_j: [f64; 3],
    pub omega: f64,
    pub tensor: GreensTensor,
}

/// Convert a recorded field component into the Green's-function component
/// `G_yy = ε₀ ε_r c² E_y / (μ ω²)`, with `μ` the magnitude of the source
/// dipole moment.
pub fn greens_from_field(e_y: C64, ctx: &PhysicalContext, omega: f64) -> Result<C64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "frequency must be positive, got {omega}"
        )));
    }
    let mu = ctx.dipole_magnitude_i();
    if mu == 0.0 {
        return Err(Error::InvalidParameter("dipole moment is zero".into()));
    }
    Ok(e_y * (ctx.eps0 * ctx.eps_r * ctx.c * ctx.c / (mu * omega * omega)))
}

fn project(sample: &GreensSample, ctx: &PhysicalContext) -> C64 {
    match sample.tensor {
        GreensTensor::Yy(g) => ctx.dipole_i[1].conj() * g * ctx.dipole_j[1],
        GreensTensor::Full(g) => {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..3 {
                for b in 0..3 {
                    acc += ctx.dipole_i[a].conj() * g[a][b] * ctx.dipole_j[b];
                }
            }
            acc
        }
    }
}

/// Dissipative rate `γᵢⱼ` and coherent shift `gᵢⱼ` from a Green's sample.
pub fn coupling_from_greens(sample: &GreensSample, ctx: &PhysicalContext) -> Result<(f64, f64)> {
    if let GreensTensor::Yy(_) = sample.tensor {
        // scalar samples require dipoles with a y component only
        let off_y = |d: &[C64; 3]| d[0].norm() + d[2].norm();
        if off_y(&ctx.dipole_i) > 0.0 || off_y(&ctx.dipole_j) > 0.0 {
            return Err(Error::InvalidParameter(
                "scalar G_yy sample paired with dipoles that have x/z components".into(),
            ));
        }
    }
    let p = project(sample, ctx);
    let prefactor = ctx.omega0 * ctx.omega0 / (ctx.eps0 * ctx.hbar * ctx.c * ctx.c);
    Ok((2.0 * prefactor * p.im, prefactor * p.re))
}

/// Local density of states from the coincident-point `G_yy`:
/// `ρ(r₀, ω) = (6ω/πc²) Im G_yy`.
pub fn ldos(g_yy: C64, omega: f64, ctx: &PhysicalContext) -> Result<f64> {
    if g_yy.im < 0.0 {
        return Err(Error::UnphysicalInput(format!(
            "Im G_yy = {} < 0 at a coincident point (passivity violated)",
            g_yy.im
        )));
    }
    Ok(6.0 * omega / (std::f64::consts::PI * ctx.c * ctx.c) * g_yy.im)
}

/// Orientation-averaged LDOS from the full tensor:
/// `ρ(r₀, ω) = (2ω/πc²) Im Tr G`.
pub fn ldos_trace(g: &[[C64; 3]; 3], omega: f64, ctx: &PhysicalContext) -> Result<f64> {
    let tr = g[0][0] + g[1][1] + g[2][2];
    if tr.im < 0.0 {
        return Err(Error::UnphysicalInput(format!(
            "Im Tr G = {} < 0 at a coincident point (passivity violated)",
            tr.im
        )));
    }
    Ok(2.0 * omega / (std::f64::consts::PI * ctx.c * ctx.c) * tr.im)
}

/// Decay-rate enhancement relative to free space:
/// `Im G_yy / (ω/6πc)`.
pub fn purcell_factor(im_g_yy: f64, omega: f64, ctx: &PhysicalContext) -> f64 {
    im_g_yy / (omega / (6.0 * std::f64::consts::PI * ctx.c))
}
