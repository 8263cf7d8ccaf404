//! Small dense linear algebra over `Complex64`.
//!
//! Everything in this crate works on 4×4 density matrices (and one 16×16
//! solve for the vectorized Liouvillian), so the routines here are written
//! directly for small fixed sizes instead of pulling in a BLAS/LAPACK
//! backend. Hermitian eigenproblems are solved by embedding the complex
//! matrix into a real symmetric one of twice the size and running cyclic
//! Jacobi rotations; each complex eigenvalue appears twice in the embedding.

use num_complex::Complex64;

pub type C64 = Complex64;
/// 4×4 complex matrix, row-major: `m[row][col]`.
pub type Mat4 = [[C64; 4]; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn zeros() -> Mat4 {
    [[ZERO; 4]; 4]
}

pub fn identity() -> Mat4 {
    let mut m = zeros();
    for i in 0..4 {
        m[i][i] = ONE;
    }
    m
}

pub fn mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = zeros();
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..4 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn sub(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn scale(a: &Mat4, s: C64) -> Mat4 {
    let mut out = *a;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    out
}

/// Conjugate transpose.
pub fn adjoint(a: &Mat4) -> Mat4 {
    let mut out = zeros();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn trace(a: &Mat4) -> C64 {
    a[0][0] + a[1][1] + a[2][2] + a[3][3]
}

pub fn commutator(a: &Mat4, b: &Mat4) -> Mat4 {
    sub(&mul(a, b), &mul(b, a))
}

/// (A + A†)/2 — removes anti-Hermitian roundoff.
pub fn hermitize(a: &Mat4) -> Mat4 {
    let ad = adjoint(a);
    scale(&add(a, &ad), C64::new(0.5, 0.0))
}

/// max_ij |a_ij − b_ij|
pub fn max_abs_diff(a: &Mat4, b: &Mat4) -> f64 {
    let mut m = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

pub fn max_abs(a: &Mat4) -> f64 {
    let mut m = 0.0f64;
    for row in a.iter() {
        for v in row.iter() {
            m = m.max(v.norm());
        }
    }
    m
}

/// Deviation from Hermiticity: max_ij |a_ij − conj(a_ji)|.
pub fn hermiticity_defect(a: &Mat4) -> f64 {
    max_abs_diff(a, &adjoint(a))
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
///
/// Returns eigenvalues (unsorted) and, in `vecs`, the orthogonal matrix of
/// column eigenvectors: `A = V diag(λ) Vᵀ`.
pub fn jacobi_symmetric(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let scale0: f64 = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[p][q].abs();
            }
        }
        if off < 1e-15 * scale0 * (n * n) as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let vals = (0..n).map(|i| m[i][i]).collect();
    (vals, v)
}

/// Embed a complex Hermitian 4×4 matrix `X + iY` as the real symmetric
/// 8×8 matrix `[[X, -Y], [Y, X]]`. Eigenvalues of the embedding are those
/// of the original, each with doubled multiplicity.
fn embed_hermitian(a: &Mat4) -> Vec<Vec<f64>> {
    let mut e = vec![vec![0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let x = a[i][j].re;
            let y = a[i][j].im;
            e[i][j] = x;
            e[i + 4][j + 4] = x;
            e[i][j + 4] = -y;
            e[i + 4][j] = y;
        }
    }
    e
}

/// Eigenvalues of a Hermitian 4×4 matrix, sorted ascending.
///
/// The anti-Hermitian part of the input is discarded.
pub fn hermitian_eigenvalues(a: &Mat4) -> [f64; 4] {
    let h = hermitize(a);
    let (mut vals, _) = jacobi_symmetric(&embed_hermitian(&h));
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // every eigenvalue is doubled by the embedding
    [vals[0], vals[2], vals[4], vals[6]]
}

/// Principal square root of a Hermitian positive-semidefinite matrix.
///
/// Negative eigenvalues are clamped to zero before taking the root; the
/// smallest eigenvalue seen is returned alongside so the caller can reject
/// inputs that were not positive semidefinite to begin with.
pub fn hermitian_sqrt(a: &Mat4) -> (Mat4, f64) {
    let h = hermitize(a);
    let (vals, v) = jacobi_symmetric(&embed_hermitian(&h));
    let min_eig = vals.iter().cloned().fold(f64::INFINITY, f64::min);

    // sqrt(E) = V diag(sqrt(max(λ, 0))) Vᵀ, then un-embed. Eigenvalues
    // within relative 1e-13 of zero are treated as exact zeros: keeping
    // them would inflate the rank of the root with sqrt(eps)-sized noise.
    let lam_max = vals.iter().cloned().fold(0.0f64, f64::max);
    let n = 8;
    let mut s = vec![vec![0.0; n]; n];
    for k in 0..n {
        if vals[k] <= 1e-13 * lam_max {
            continue;
        }
        let lk = vals[k].sqrt();
        for i in 0..n {
            let vik = v[i][k];
            if vik == 0.0 {
                continue;
            }
            for j in 0..n {
                s[i][j] += lk * vik * v[j][k];
            }
        }
    }
    let mut out = zeros();
    for i in 0..4 {
        for j in 0..4 {
            let x = 0.5 * (s[i][j] + s[i + 4][j + 4]);
            let y = 0.5 * (s[i + 4][j] - s[i][j + 4]);
            out[i][j] = C64::new(x, y);
        }
    }
    (out, min_eig)
}

/// Solve `A x = b` for a dense complex system by LU with partial pivoting.
///
/// Returns `None` when a pivot falls below `1e-12` times the largest
/// initial entry (rank-deficient to working precision).
pub fn lu_solve(a: &[Vec<C64>], b: &[C64]) -> Option<Vec<C64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<C64>> = a.to_vec();
    let mut x: Vec<C64> = b.to_vec();

    let scale0 = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, v| acc.max(v.norm()))
        .max(f64::MIN_POSITIVE);
    let pivot_tol = 1e-12 * scale0;

    for col in 0..n {
        let (pivot_row, pivot_mag) = (col..n)
            .map(|r| (r, m[r][col].norm()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if pivot_mag < pivot_tol {
            return None;
        }
        if pivot_row != col {
            m.swap(pivot_row, col);
            x.swap(pivot_row, col);
        }
        let pivot = m[col][col];
        for row in (col + 1)..n {
            let factor = m[row][col] / pivot;
            if factor == ZERO {
                continue;
            }
            for k in col..n {
                let v = m[col][k];
                m[row][k] -= factor * v;
            }
            let v = x[col];
            x[row] -= factor * v;
        }
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for k in (col + 1)..n {
            acc -= m[col][k] * x[k];
        }
        x[col] = acc / m[col][col];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn jacobi_diagonalizes_known_matrix() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let a = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let (mut vals, v) = jacobi_symmetric(&a);
        vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
        // orthogonality
        let dot = v[0][0] * v[0][1] + v[1][0] * v[1][1];
        assert!(dot.abs() < 1e-12);
    }

    #[test]
    fn hermitian_eigenvalues_complex_matrix() {
        // [[1, i],[-i, 1]] has eigenvalues 0 and 2
        let mut m = zeros();
        m[0][0] = ONE;
        m[1][1] = ONE;
        m[0][1] = c(0.0, 1.0);
        m[1][0] = c(0.0, -1.0);
        m[2][2] = c(5.0, 0.0);
        m[3][3] = c(-3.0, 0.0);
        let vals = hermitian_eigenvalues(&m);
        let expected = [-3.0, 0.0, 2.0, 5.0];
        for (got, want) in vals.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
    }

    #[test]
    fn sqrt_squares_back() {
        // PSD matrix with complex off-diagonals
        let mut m = zeros();
        m[0][0] = c(2.0, 0.0);
        m[1][1] = c(1.0, 0.0);
        m[0][1] = c(0.3, 0.4);
        m[1][0] = c(0.3, -0.4);
        m[2][2] = c(0.5, 0.0);
        let (s, min_eig) = hermitian_sqrt(&m);
        assert!(min_eig > -1e-14);
        let sq = mul(&s, &s);
        assert!(max_abs_diff(&sq, &m) < 1e-12);
    }

    #[test]
    fn lu_solves_random_system() {
        let a = vec![
            vec![c(4.0, 1.0), c(1.0, 0.0), c(0.0, -2.0)],
            vec![c(1.0, -1.0), c(3.0, 0.0), c(1.0, 0.5)],
            vec![c(0.0, 0.0), c(2.0, 2.0), c(5.0, 0.0)],
        ];
        let x_true = [c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0)];
        let b: Vec<C64> = (0..3)
            .map(|i| (0..3).map(|j| a[i][j] * x_true[j]).sum())
            .collect();
        let x = lu_solve(&a, &b).unwrap();
        for (got, want) in x.iter().zip(x_true.iter()) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn lu_detects_singular() {
        let a = vec![vec![ONE, c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]];
        let b = vec![ONE, ONE];
        assert!(lu_solve(&a, &b).is_none());
    }
}
