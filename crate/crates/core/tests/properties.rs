//! Property tests over randomly generated states and parameters.

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use enzq::dynamics::{evolve, IntegratorOptions, LindbladGenerator};
use enzq::linalg::{self, Mat4};
use enzq::model::{
    to_dicke, to_product, validate_state, Basis, CouplingParameters, DensityMatrix, PumpDrive,
    StateTolerances, TimeGrid,
};
use enzq::vacuum::vacuum_gamma12;
use enzq::wootters_concurrence;

/// Random Hermitian PSD unit-trace matrix built as AA†/Tr(AA†).
fn density_from_seed(parts: &[f64; 32]) -> Mat4 {
    let mut a = linalg::zeros();
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = C64::new(parts[8 * i + 2 * j], parts[8 * i + 2 * j + 1]);
        }
    }
    let ad = linalg::adjoint(&a);
    let m = linalg::mul(&a, &ad);
    let tr = linalg::trace(&m);
    linalg::scale(&m, C64::new(1.0, 0.0) / tr)
}

fn arb_density() -> impl Strategy<Value = Mat4> {
    // keep entries away from the all-zero corner so the trace never vanishes
    proptest::array::uniform32(-1.0f64..1.0).prop_filter_map("nonzero trace", |parts| {
        let m = density_from_seed(&parts);
        let tr = linalg::trace(&m);
        (tr.re.is_finite() && (tr.re - 1.0).abs() < 1e-9).then_some(m)
    })
}

fn single_qubit_unitary(theta: f64, phi: f64, lam: f64) -> [[C64; 2]; 2] {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let ei = |x: f64| C64::new(0.0, x).exp();
    [
        [C64::new(ct, 0.0), -ei(lam) * st],
        [ei(phi) * st, ei(phi + lam) * ct],
    ]
}

fn kron2(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> Mat4 {
    let mut out = linalg::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn basis_round_trip_is_identity(m in arb_density()) {
        let rho = DensityMatrix::from_parts(m, Basis::Product);
        let back = to_product(&to_dicke(&rho).unwrap()).unwrap();
        prop_assert!(linalg::max_abs_diff(back.entries(), rho.entries()) <= 1e-12);
    }

    #[test]
    fn basis_change_preserves_spectrum(m in arb_density()) {
        let rho = DensityMatrix::from_parts(m, Basis::Product);
        let before = rho.eigenvalues();
        let after = to_dicke(&rho).unwrap().eigenvalues();
        for (x, y) in before.iter().zip(after.iter()) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn concurrence_stays_in_unit_interval(m in arb_density()) {
        let rho = DensityMatrix::from_parts(m, Basis::Product);
        let c = wootters_concurrence(&rho).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&c));
    }

    #[test]
    fn concurrence_invariant_under_local_unitaries(
        m in arb_density(),
        t1 in 0.0..std::f64::consts::PI,
        p1 in 0.0..std::f64::consts::TAU,
        l1 in 0.0..std::f64::consts::TAU,
        t2 in 0.0..std::f64::consts::PI,
        p2 in 0.0..std::f64::consts::TAU,
        l2 in 0.0..std::f64::consts::TAU,
    ) {
        let rho = DensityMatrix::from_parts(m, Basis::Product);
        let u = kron2(&single_qubit_unitary(t1, p1, l1), &single_qubit_unitary(t2, p2, l2));
        let rotated = linalg::mul(&u, &linalg::mul(rho.entries(), &linalg::adjoint(&u)));
        let c0 = wootters_concurrence(&rho).unwrap();
        let c1 = wootters_concurrence(&DensityMatrix::from_parts(rotated, Basis::Product)).unwrap();
        prop_assert!((c0 - c1).abs() <= 1e-9, "c0 = {c0}, c1 = {c1}");
    }

    #[test]
    fn vacuum_rate_is_bounded(x in 0.0f64..1e4) {
        prop_assert!(vacuum_gamma12(x).unwrap().abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn evolved_states_validate_at_default_tolerances(
        gamma12 in -0.99f64..0.99,
        g12 in -1.0f64..1.0,
        omega in 0.0f64..0.4,
        t_end in 0.5f64..20.0,
    ) {
        let coupling = CouplingParameters::normalized(gamma12, g12).unwrap();
        let pump = PumpDrive::new(C64::new(omega, 0.0), C64::new(0.0, 0.0), 0.0).unwrap();
        let gen = LindbladGenerator::new(coupling, pump);
        let grid = TimeGrid::new(vec![0.0, t_end / 2.0, t_end]).unwrap();
        let traj = evolve(
            &enzq::dynamics::dicke_initial_state(),
            &gen,
            &grid,
            &IntegratorOptions::default(),
        )
        .unwrap();
        for state in &traj.states {
            prop_assert!(validate_state(state, &StateTolerances::default()).pass());
        }
    }
}

/// Lower-index media couple the pair more strongly at fixed separation:
/// the evolved concurrence curves are ordered pointwise over tγ ∈ [0, 5]
/// at r/λ₀ = 0.5 for n ∈ {0.1, 0.5, 1.0}.
#[test]
fn lower_index_concurrence_dominates_through_dynamics() {
    let grid = TimeGrid::linspace(5.0, 51).unwrap();
    let mut curves = Vec::new();
    for n in [0.1, 0.5, 1.0] {
        let coupling = enzq::vacuum::vacuum_coupling(0.5, n).unwrap();
        let gen = LindbladGenerator::unpumped(coupling);
        let traj = evolve(
            &enzq::dynamics::dicke_initial_state(),
            &gen,
            &grid,
            &IntegratorOptions::default(),
        )
        .unwrap();
        curves.push(traj.concurrences().unwrap());
    }
    for k in 0..grid.len() {
        assert!(curves[0][k] >= curves[1][k] - 1e-9, "sample {k}");
        assert!(curves[1][k] >= curves[2][k] - 1e-9, "sample {k}");
    }
}
