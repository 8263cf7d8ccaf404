//! Concurrence measures: the general Wootters formula and the shortcut
//! valid on the single-excitation Dicke sector.
//!
//! Wootters concurrence of a two-qubit state `ρ` is
//! `C = max(0, √u₁ − √u₂ − √u₃ − √u₄)` with `uᵢ` the eigenvalues of
//! `ρρ̃` in decreasing order and `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` the
//! spin-flipped state. The eigenvalues are computed here through the
//! Hermitian product `√ρ ρ̃ √ρ`, which shares the spectrum of `ρρ̃` but
//! keeps the eigenproblem Hermitian.

use crate::error::Error;
use crate::linalg::{self, Mat4, C64};
use crate::model::{to_product, Basis, DensityMatrix};
use crate::Result;

/// Tolerance for eigenvalue defects of `ρρ̃`: real parts above `−1e−9`
/// clamp to zero, anything worse rejects the input. One order looser than
/// the integrator tolerance so accumulated roundoff never false-alarms.
pub const EIGENVALUE_CLAMP: f64 = 1e-9;

/// The spin-flip matrix `σ_y ⊗ σ_y` in the product basis: the
/// anti-diagonal `(−1, 1, 1, −1)`. Applying [`spin_flip`] twice returns
/// the original matrix.
pub fn spin_flip_matrix() -> Mat4 {
    let mut y = linalg::zeros();
    y[0][3] = C64::new(-1.0, 0.0);
    y[1][2] = C64::new(1.0, 0.0);
    y[2][1] = C64::new(1.0, 0.0);
    y[3][0] = C64::new(-1.0, 0.0);
    y
}

/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` for product-basis entries.
pub fn spin_flip(m: &Mat4) -> Mat4 {
    let y = spin_flip_matrix();
    let mut conj = *m;
    for row in conj.iter_mut() {
        for v in row.iter_mut() {
            *v = v.conj();
        }
    }
    linalg::mul(&y, &linalg::mul(&conj, &y))
}

/// Wootters concurrence of an arbitrary two-qubit state, in `[0, 1]`.
/// Dicke-tagged inputs are converted to the product basis first.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let prod = match rho.basis() {
        Basis::Product => rho.clone(),
        Basis::Dicke => to_product(rho)?,
    };
    let m = prod.entries();
    let m_tilde = spin_flip(m);

    let (sqrt_rho, min_rho_eig) = linalg::hermitian_sqrt(m);
    if min_rho_eig < -EIGENVALUE_CLAMP {
        return Err(Error::InvalidSpectrum(format!(
            "state eigenvalue {min_rho_eig:.3e} below −{EIGENVALUE_CLAMP:.0e}"
        )));
    }

    // Hermitian carrier of the ρρ̃ spectrum.
    let product = linalg::mul(&sqrt_rho, &linalg::mul(&m_tilde, &sqrt_rho));
    let herm_defect = linalg::hermiticity_defect(&product);
    if herm_defect > 1e-7 {
        return Err(Error::InvalidSpectrum(format!(
            "ρρ̃ carrier deviates from Hermiticity by {herm_defect:.3e}"
        )));
    }
    let mut u = linalg::hermitian_eigenvalues(&product);
    for v in u.iter_mut() {
        if *v < 0.0 {
            if *v < -EIGENVALUE_CLAMP {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalue of ρρ̃ is {v:.3e}, below −{EIGENVALUE_CLAMP:.0e}"
                )));
            }
            *v = 0.0;
        }
    }
    // ascending from the solver; Wootters wants descending roots
    let c = u[3].sqrt() - u[2].sqrt() - u[1].sqrt() - u[0].sqrt();
    Ok(c.max(0.0))
}

/// Concurrence from Dicke populations and coherences,
/// `C = √[(ρ₊₊ − ρ₋₋)² + 4 Im(ρ₊₋)²]`.
///
/// Valid only on states reachable from the single-excitation initial
/// condition under unpumped evolution, which keeps `ρ₃₃ = 0`; inputs with
/// `|ρ₃₃| > 1e−8` are rejected and must go through
/// [`wootters_concurrence`].
pub fn dicke_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.basis() != Basis::Dicke {
        return Err(Error::BasisMismatch {
            expected: Basis::Dicke,
            found: rho.basis(),
        });
    }
    let m = rho.entries();
    let rho33 = m[0][0].norm();
    if rho33 > 1e-8 {
        return Err(Error::InvalidParameter(format!(
            "doubly excited population ρ₃₃ = {rho33:.3e} breaks the single-excitation shortcut; use the Wootters formula"
        )));
    }
    let diff = m[1][1].re - m[2][2].re;
    let im = m[1][2].im;
    Ok((diff * diff + 4.0 * im * im).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;
    use crate::model::to_dicke;

    fn pure_from_vec(v: [C64; 4]) -> DensityMatrix {
        let mut m = linalg::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = v[i] * v[j].conj();
            }
        }
        DensityMatrix::from_parts(m, Basis::Product)
    }

    fn bell_phi_plus() -> DensityMatrix {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        pure_from_vec([s, C64::new(0.0, 0.0), C64::new(0.0, 0.0), s])
    }

    fn bell_psi_plus() -> DensityMatrix {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        pure_from_vec([C64::new(0.0, 0.0), s, s, C64::new(0.0, 0.0)])
    }

    #[test]
    fn spin_flip_is_involutive() {
        let rho = bell_psi_plus();
        let once = spin_flip(rho.entries());
        let twice = spin_flip(&once);
        assert!(linalg::max_abs_diff(&twice, rho.entries()) < 1e-15);
    }

    #[test]
    fn bell_states_are_maximally_entangled() {
        assert!((wootters_concurrence(&bell_phi_plus()).unwrap() - 1.0).abs() < 1e-12);
        assert!((wootters_concurrence(&bell_psi_plus()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_states_are_unentangled() {
        for k in 0..4 {
            let rho = DensityMatrix::basis_state(k, Basis::Product);
            assert!(wootters_concurrence(&rho).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn werner_states_follow_known_curve() {
        // p·|Φ⁺⟩⟨Φ⁺| + (1−p)·I/4 has C = max(0, (3p−1)/2)
        for p in [0.0, 1.0 / 3.0, 0.5, 0.8, 1.0] {
            let bell = bell_phi_plus();
            let mut m = linalg::zeros();
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] = bell.entries()[i][j] * p;
                }
                m[i][i] += C64::new((1.0 - p) / 4.0, 0.0);
            }
            let rho = DensityMatrix::from_parts(m, Basis::Product);
            let c = wootters_concurrence(&rho).unwrap();
            let expected = (0.0f64).max((3.0 * p - 1.0) / 2.0);
            assert!((c - expected).abs() < 1e-10, "p = {p}: {c} vs {expected}");
        }
    }

    #[test]
    fn dicke_route_accepts_only_dicke_tags() {
        let rho = bell_psi_plus();
        assert!(matches!(
            dicke_concurrence(&rho),
            Err(Error::BasisMismatch { .. })
        ));
    }

    #[test]
    fn dicke_shortcut_on_plus_state() {
        let plus = DensityMatrix::basis_state(1, Basis::Dicke);
        assert!((dicke_concurrence(&plus).unwrap() - 1.0).abs() < 1e-14);
        // |+⟩ in the product basis is the ψ⁺ Bell state: the two routes agree
        assert!((wootters_concurrence(&plus).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dicke_shortcut_rejects_doubly_excited_population() {
        let rho = DensityMatrix::basis_state(0, Basis::Dicke); // |3⟩⟨3|
        assert!(dicke_concurrence(&rho).is_err());
    }

    #[test]
    fn dicke_routes_agree_on_single_excitation_mixture() {
        // diag(0, a, b, 1−a−b) in the Dicke basis with a coherence
        let (a, b) = (0.3, 0.2);
        let mut m = linalg::zeros();
        m[1][1] = C64::new(a, 0.0);
        m[2][2] = C64::new(b, 0.0);
        m[3][3] = C64::new(1.0 - a - b, 0.0);
        m[1][2] = C64::new(0.05, 0.1);
        m[2][1] = m[1][2].conj();
        let rho = DensityMatrix::from_parts(m, Basis::Dicke);
        let shortcut = dicke_concurrence(&rho).unwrap();
        let general = wootters_concurrence(&rho).unwrap();
        assert!(
            (shortcut - general).abs() < 1e-10,
            "{shortcut} vs {general}"
        );
    }

    #[test]
    fn initial_single_excitation_state_is_unentangled() {
        let e1g2 = DensityMatrix::basis_state(1, Basis::Product);
        let d = to_dicke(&e1g2).unwrap();
        assert!(dicke_concurrence(&d).unwrap().abs() < 1e-14);
        assert!(wootters_concurrence(&d).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rejects_badly_negative_spectrum() {
        let mut m = linalg::zeros();
        m[0][0] = C64::new(1.5, 0.0);
        m[1][1] = C64::new(-0.5, 0.0);
        let rho = DensityMatrix::from_parts(m, Basis::Product);
        assert!(matches!(
            wootters_concurrence(&rho),
            Err(Error::InvalidSpectrum(_))
        ));
        let _ = ONE;
    }
}
