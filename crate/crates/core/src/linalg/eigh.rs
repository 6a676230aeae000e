use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{invalid_argument, Error, Result};
use crate::tol;

/// Eigenvalues sorted ascending with matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector for `values[i]`.
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::from_diagonal(&self.values);
        self.vectors.conjugate(&lambda)
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// the real symmetric Jacobi rotation to the resulting 2x2 block. Sweeps stop
/// once the off-diagonal Frobenius mass falls below `tol::SOLVER` relative to
/// the matrix norm.
pub fn eigh(m: &ComplexMatrix) -> Result<Spectrum> {
    let defect = m.hermiticity_defect();
    if defect > tol::VALIDATION {
        return Err(invalid_argument(format!(
            "matrix is not Hermitian (defect {defect:.3e})"
        )));
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        let threshold = tol::SOLVER * scale;
        let mut converged = false;
        for _ in 0..tol::MAX_SWEEPS {
            if off_diagonal_mass(&a) <= threshold {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_mass(&a) > threshold {
            return Err(Error::Numeric(format!(
                "Jacobi eigensolver did not converge in {} sweeps",
                tol::MAX_SWEEPS
            )));
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[i].total_cmp(&raw[j]));
    let values = order.iter().map(|&i| raw[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(Spectrum { values, vectors })
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Zeroes `a[p][q]` with `a <- U† a U`, `v <- v U`, where
/// `U = diag(1, e^{-i arg a_pq}) · [[c, s], [-s, c]]` on the `(p, q)` plane.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let phase = (apq / mag).conj();

    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = phase * -s;
    let u_qq = phase * c;

    let n = a.dim();
    for r in 0..n {
        let (x, y) = (a[(r, p)], a[(r, q)]);
        a[(r, p)] = x * u_pp + y * u_qp;
        a[(r, q)] = x * u_pq + y * u_qq;
    }
    for r in 0..n {
        let (x, y) = (a[(p, r)], a[(q, r)]);
        a[(p, r)] = u_pp.conj() * x + u_qp.conj() * y;
        a[(q, r)] = u_pq.conj() * x + u_qq.conj() * y;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for r in 0..n {
        let (x, y) = (v[(r, p)], v[(r, q)]);
        v[(r, p)] = x * u_pp + y * u_qp;
        v[(r, q)] = x * u_pq + y * u_qq;
    }
}
