//! Random instances for property checks and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::battery::QubitPairEnergies;
use crate::linalg::ComplexMatrix;
use crate::states::{DensityMatrix, XStateParams};

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Uniform point on the probability simplex with `n` vertices.
pub fn random_simplex<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| complex_gaussian(rng)).hermitian_part()
}

/// Full-rank state `G G† / Tr(G G†)` from a complex Ginibre matrix `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(
    dim_a: usize,
    dim_b: usize,
    rng: &mut R,
) -> DensityMatrix {
    let d = dim_a * dim_b;
    let g = ComplexMatrix::from_fn(d, |_, _| complex_gaussian(rng));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr).hermitian_part(), dim_a, dim_b)
        .expect("Ginibre states are valid")
}

/// Valid Bell-diagonal coefficients, drawn by sampling the four Bell-basis
/// weights uniformly from the simplex.
pub fn random_bell_triple<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let l = random_simplex(4, rng);
    [
        2.0 * (l[2] + l[3]) - 1.0,
        2.0 * (l[1] + l[3]) - 1.0,
        2.0 * (l[1] + l[2]) - 1.0,
    ]
}

/// Random X-state with both coherences inside their PSD discs.
pub fn random_x_state_params<R: Rng + ?Sized>(rng: &mut R) -> XStateParams {
    let p = random_simplex(4, rng);
    let mut x = XStateParams::diagonal(p[0], p[1], p[2], p[3]);
    let r14 = (p[0] * p[3]).sqrt() * rng.random::<f64>();
    let r23 = (p[1] * p[2]).sqrt() * rng.random::<f64>();
    x.rho14 = Complex64::from_polar(r14, rng.random_range(0.0..std::f64::consts::TAU));
    x.rho23 = Complex64::from_polar(r23, rng.random_range(0.0..std::f64::consts::TAU));
    x
}

/// `ε^A ≥ ε^B ≥ 0` drawn from `[0, 1)`.
pub fn random_energies<R: Rng + ?Sized>(rng: &mut R) -> QubitPairEnergies {
    let a: f64 = rng.random();
    let b: f64 = rng.random();
    QubitPairEnergies::new(a.max(b), a.min(b)).expect("ordered energies")
}
