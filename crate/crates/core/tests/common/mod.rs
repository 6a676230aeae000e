#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use qbcap_core::{ComplexMatrix, Complex64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Eigenvalues from nalgebra's Hermitian solver, ascending.
pub fn reference_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim();
    let na = DMatrix::from_fn(n, n, |i, j| {
        let z = m[(i, j)];
        Complex::new(z.re, z.im)
    });
    let mut v: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Extremal unitary-orbit energies by enumerating all pairings of the two
/// spectra (the extremes over the unitary group are attained at permutations).
pub fn brute_force_energy_range(lambda: &[f64], eps: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in permutations(lambda.len()) {
        let e: f64 = p.iter().enumerate().map(|(i, &j)| lambda[j] * eps[i]).sum();
        lo = lo.min(e);
        hi = hi.max(e);
    }
    (lo, hi)
}

pub fn diag(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(values)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
