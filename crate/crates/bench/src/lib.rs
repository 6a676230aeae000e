//! Fixed, seeded inputs shared by the benchmarks.

use qbcap_core::sampling::random_density_matrix;
use qbcap_core::{ComplexMatrix, DensityMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn two_qubit_states(n: usize, seed: u64) -> Vec<DensityMatrix> {
    let mut r = rng(seed);
    (0..n).map(|_| random_density_matrix(2, 2, &mut r)).collect()
}

pub fn hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    qbcap_core::sampling::random_hermitian(dim, &mut rng(seed))
}
