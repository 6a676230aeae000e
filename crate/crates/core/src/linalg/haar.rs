use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::ComplexMatrix;

/// Householder QR of a square matrix: `m = q · r` with `q` unitary and `r`
/// upper triangular (diagonal phases unconstrained).
pub fn qr(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.dim();
    let mut r = m.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let norm = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // r <- (I - 2 v v†) r on rows k..n
        for j in 0..n {
            let dot: Complex64 = (k..n).map(|i| v[i - k].conj() * r[(i, j)]).sum();
            for i in k..n {
                r[(i, j)] -= v[i - k] * dot * 2.0;
            }
        }
        // q <- q (I - 2 v v†) on columns k..n
        for i in 0..n {
            let dot: Complex64 = (k..n).map(|j| q[(i, j)] * v[j - k]).sum();
            for j in k..n {
                q[(i, j)] -= dot * v[j - k].conj() * 2.0;
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            r[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    (q, r)
}

/// Samples a Haar-distributed unitary: QR of a complex Ginibre matrix with
/// the columns of `Q` rescaled by the phases of `diag(R)`.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    assert!(dim >= 1, "dimension must be positive");
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let (q, r) = qr(&g);
    let phases: Vec<Complex64> = (0..dim)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                d / d.norm()
            }
        })
        .collect();
    ComplexMatrix::from_fn(dim, |i, j| q[(i, j)] * phases[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unitarity_defect(u: &ComplexMatrix) -> f64 {
        (&u.adjoint() * u).max_abs_diff(&ComplexMatrix::identity(u.dim()))
    }

    #[test]
    fn dim_one_is_a_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = haar_unitary(1, &mut rng);
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dim_two_is_unitary_and_seeded() {
        let u = haar_unitary(2, &mut ChaCha8Rng::seed_from_u64(7));
        let w = haar_unitary(2, &mut ChaCha8Rng::seed_from_u64(7));
        assert!(unitarity_defect(&u) < 1e-10);
        assert_eq!(u, w);
    }

    #[test]
    fn qr_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8 {
            let m = ComplexMatrix::from_fn(n, |_, _| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let (q, r) = qr(&m);
            assert!(unitarity_defect(&q) < 1e-12);
            assert!((&q * &r).max_abs_diff(&m) < 1e-12);
            for i in 0..n {
                for j in 0..i {
                    assert_eq!(r[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn haar_first_moment() {
        // E|u_00|^2 = 1/d for Haar measure.
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let samples = 10_000;
        let mean = (0..samples)
            .map(|_| haar_unitary(4, &mut rng)[(0, 0)].norm_sqr())
            .sum::<f64>()
            / samples as f64;
        assert!((mean - 0.25).abs() < 0.02, "mean {mean}");
    }
}
