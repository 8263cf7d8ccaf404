//! Shared value types, basis conventions, and state validation.
//!
//! Two bases are used throughout:
//!
//! * product basis, ordered `{|e₁e₂⟩, |e₁g₂⟩, |g₁e₂⟩, |g₁g₂⟩}`;
//! * Dicke basis, ordered `{|3⟩, |+⟩, |−⟩, |0⟩}` with
//!   `|3⟩ = |e₁e₂⟩`, `|±⟩ = (|e₁g₂⟩ ± |g₁e₂⟩)/√2`, `|0⟩ = |g₁g₂⟩`.
//!
//! Every density matrix carries its basis as part of the value; operations
//! that are only valid in one basis reject the other instead of silently
//! reinterpreting entries.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{self, Mat4, C64, ONE, ZERO};
use crate::Result;

/// Basis tag carried by every density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// `{|e₁e₂⟩, |e₁g₂⟩, |g₁e₂⟩, |g₁g₂⟩}`
    Product,
    /// `{|3⟩, |+⟩, |−⟩, |0⟩}`
    Dicke,
}

/// Change-of-basis matrix with the Dicke states as columns, written in the
/// product basis. It is real, symmetric, and involutory (`U² = I`), so the
/// same matrix converts in both directions.
pub fn dicke_basis_matrix() -> Mat4 {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut u = linalg::zeros();
    u[0][0] = ONE;
    u[1][1] = s;
    u[1][2] = s;
    u[2][1] = s;
    u[2][2] = -s;
    u[3][3] = ONE;
    u
}

/// The reservoir triple that fully determines two-qubit dynamics, in units
/// of the single-emitter decay rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParameters {
    gamma: f64,
    gamma12: f64,
    g12: f64,
}

impl CouplingParameters {
    /// Build a validated coupling triple.
    ///
    /// Requires `gamma > 0` and `|gamma12| ≤ gamma` so that both collective
    /// decay channels `γ ± γ₁₂` are non-negative.
    pub fn new(gamma: f64, gamma12: f64, g12: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        if !gamma12.is_finite() || !g12.is_finite() {
            return Err(Error::InvalidParameter(
                "gamma12 and g12 must be finite".into(),
            ));
        }
        if gamma12.abs() > gamma {
            return Err(Error::InvalidParameter(format!(
                "|gamma12| = {} exceeds gamma = {}; collective rates γ ± γ₁₂ would go negative",
                gamma12.abs(),
                gamma
            )));
        }
        Ok(Self {
            gamma,
            gamma12,
            g12,
        })
    }

    /// Normalized triple with `γ = 1`.
    pub fn normalized(gamma12_over_gamma: f64, g12_over_gamma: f64) -> Result<Self> {
        Self::new(1.0, gamma12_over_gamma, g12_over_gamma)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn gamma12(&self) -> f64 {
        self.gamma12
    }

    pub fn g12(&self) -> f64 {
        self.g12
    }

    /// Superradiant decay rate `γ + γ₁₂`.
    pub fn superradiant_rate(&self) -> f64 {
        self.gamma + self.gamma12
    }

    /// Subradiant decay rate `γ − γ₁₂`.
    pub fn subradiant_rate(&self) -> f64 {
        self.gamma - self.gamma12
    }
}

/// Coherent drive on the two qubits: complex Rabi frequencies (units of γ)
/// and the common pump-qubit detuning `Δ = ω₀ − ω_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpDrive {
    pub omega1: C64,
    pub omega2: C64,
    pub detuning: f64,
}

impl PumpDrive {
    pub fn new(omega1: C64, omega2: C64, detuning: f64) -> Result<Self> {
        if !detuning.is_finite() || !omega1.is_finite() || !omega2.is_finite() {
            return Err(Error::InvalidParameter(
                "pump amplitudes and detuning must be finite".into(),
            ));
        }
        Ok(Self {
            omega1,
            omega2,
            detuning,
        })
    }

    /// No drive.
    pub fn off() -> Self {
        Self {
            omega1: ZERO,
            omega2: ZERO,
            detuning: 0.0,
        }
    }

    /// Single-pump preset `Ω₁ = 0.4γ, Ω₂ = 0`.
    pub fn asymmetric() -> Self {
        Self {
            omega1: C64::new(0.4, 0.0),
            omega2: ZERO,
            detuning: 0.0,
        }
    }

    /// Preset `Ω₁ = Ω₂ = 0.2γ`.
    pub fn symmetric() -> Self {
        Self {
            omega1: C64::new(0.2, 0.0),
            omega2: C64::new(0.2, 0.0),
            detuning: 0.0,
        }
    }

    /// Preset `Ω₁ = −Ω₂ = 0.2γ`.
    pub fn antisymmetric() -> Self {
        Self {
            omega1: C64::new(0.2, 0.0),
            omega2: C64::new(-0.2, 0.0),
            detuning: 0.0,
        }
    }

    pub fn is_off(&self) -> bool {
        self.omega1 == ZERO && self.omega2 == ZERO
    }
}

/// Strictly increasing grid of normalized times `tγ ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    samples: Vec<f64>,
}

impl TimeGrid {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidParameter("time grid is empty".into()));
        }
        if !samples[0].is_finite() || samples[0] < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "time grid must start at tγ ≥ 0, got {}",
                samples[0]
            )));
        }
        for w in samples.windows(2) {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "time grid must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { samples })
    }

    /// `n` evenly spaced samples covering `[0, t_max]` (n ≥ 2).
    pub fn linspace(t_max: f64, n: usize) -> Result<Self> {
        if n < 2 || !(t_max > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "linspace needs t_max > 0 and n ≥ 2, got t_max = {t_max}, n = {n}"
            )));
        }
        let step = t_max / (n - 1) as f64;
        Self::new((0..n).map(|i| i as f64 * step).collect())
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Tolerances used by [`validate_state`]; the defaults match the state
/// invariants promised by the dynamics module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateTolerances {
    pub hermiticity: f64,
    pub trace: f64,
    pub positivity: f64,
}

impl Default for StateTolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-10,
            trace: 1e-9,
            positivity: 1e-8,
        }
    }
}

/// Per-invariant result of validating a density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// max |ρᵢⱼ − conj(ρⱼᵢ)|
    pub hermiticity_defect: f64,
    /// |Tr ρ − 1|
    pub trace_defect: f64,
    /// smallest eigenvalue of the Hermitian part
    pub min_eigenvalue: f64,
    pub hermitian_ok: bool,
    pub trace_ok: bool,
    pub positive_ok: bool,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.hermitian_ok && self.trace_ok && self.positive_ok
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "hermiticity defect {:.3e} ({}), trace defect {:.3e} ({}), min eigenvalue {:.3e} ({})",
            self.hermiticity_defect,
            if self.hermitian_ok { "ok" } else { "FAIL" },
            self.trace_defect,
            if self.trace_ok { "ok" } else { "FAIL" },
            self.min_eigenvalue,
            if self.positive_ok { "ok" } else { "FAIL" },
        )
    }
}

/// 4×4 complex density matrix tagged with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Mat4,
    basis: Basis,
}

impl DensityMatrix {
    /// Wrap raw entries without validation. Prefer [`DensityMatrix::new`]
    /// unless the entries are known-good by construction.
    pub fn from_parts(entries: Mat4, basis: Basis) -> Self {
        Self { entries, basis }
    }

    /// Wrap raw entries, rejecting matrices that fail the default state
    /// invariants (Hermiticity, unit trace, positivity).
    pub fn new(entries: Mat4, basis: Basis) -> Result<Self> {
        let rho = Self { entries, basis };
        let report = validate_state(&rho, &StateTolerances::default());
        if !report.pass() {
            return Err(Error::InvalidParameter(format!(
                "not a valid density matrix: {report}"
            )));
        }
        Ok(rho)
    }

    /// Pure state `|k⟩⟨k|` on the given basis vector index.
    pub fn basis_state(index: usize, basis: Basis) -> Self {
        let mut m = linalg::zeros();
        m[index][index] = ONE;
        Self { entries: m, basis }
    }

    /// Maximally mixed state `I/4`.
    pub fn maximally_mixed(basis: Basis) -> Self {
        let mut m = linalg::zeros();
        for i in 0..4 {
            m[i][i] = C64::new(0.25, 0.0);
        }
        Self { entries: m, basis }
    }

    pub fn entries(&self) -> &Mat4 {
        &self.entries
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn trace(&self) -> C64 {
        linalg::trace(&self.entries)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        linalg::hermitian_eigenvalues(&self.entries)
    }

    /// Reduced 2×2 state of qubit 1 (trace over qubit 2). Dicke-tagged
    /// states are converted to the product basis first.
    pub fn reduce_qubit2(&self) -> [[C64; 2]; 2] {
        let prod = match self.basis {
            Basis::Product => self.clone(),
            Basis::Dicke => to_product(self).expect("Dicke tag checked"),
        };
        let m = prod.entries;
        let mut out = [[ZERO; 2]; 2];
        for a in 0..2 {
            for ap in 0..2 {
                for b in 0..2 {
                    out[a][ap] += m[2 * a + b][2 * ap + b];
                }
            }
        }
        out
    }
}

/// Transform a product-basis state into the Dicke basis (`ρ_D = U† ρ U`
/// with the Dicke states as the columns of `U`). Trace, Hermiticity, and
/// the eigenvalue multiset are preserved.
pub fn to_dicke(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.basis != Basis::Product {
        return Err(Error::BasisMismatch {
            expected: Basis::Product,
            found: rho.basis,
        });
    }
    let u = dicke_basis_matrix();
    // U is real-symmetric and involutory, so U† = U.
    let m = linalg::mul(&u, &linalg::mul(&rho.entries, &u));
    Ok(DensityMatrix {
        entries: m,
        basis: Basis::Dicke,
    })
}

/// Exact inverse of [`to_dicke`].
pub fn to_product(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.basis != Basis::Dicke {
        return Err(Error::BasisMismatch {
            expected: Basis::Dicke,
            found: rho.basis,
        });
    }
    let u = dicke_basis_matrix();
    let m = linalg::mul(&u, &linalg::mul(&rho.entries, &u));
    Ok(DensityMatrix {
        entries: m,
        basis: Basis::Product,
    })
}

/// Measure every state invariant and report pass/fail per invariant.
/// Reporting only: never fails.
pub fn validate_state(rho: &DensityMatrix, tol: &StateTolerances) -> ValidationReport {
    let herm = linalg::hermiticity_defect(&rho.entries);
    let tr = (linalg::trace(&rho.entries) - ONE).norm();
    let min_eig = linalg::hermitian_eigenvalues(&rho.entries)[0];
    ValidationReport {
        hermiticity_defect: herm,
        trace_defect: tr,
        min_eigenvalue: min_eig,
        hermitian_ok: herm <= tol.hermiticity,
        trace_ok: tr <= tol.trace,
        positive_ok: min_eig >= -tol.positivity,
    }
}
