//! Quantum battery capacity of bipartite qubit states and its response to
//! rank-1 projective measurements on the second subsystem.
//!
//! The capacity of a state `rho` with respect to a Hamiltonian `H` is
//!
//! ```text
//! C(rho, H) = sum_i eps_i (lambda_i - lambda_{d-1-i})
//! ```
//!
//! with both the eigenvalues `lambda` of `rho` and the eigenenergies `eps` of
//! `H` sorted ascending. It is the width of the energy window reachable from
//! `rho` by unitary evolution.
//!
//! Layout:
//!
//! - [`linalg`]: dense complex matrices, Kronecker products, partial traces,
//!   a Jacobi Hermitian eigensolver and Haar-random unitaries.
//! - [`states`]: validated density matrices and the two-qubit state families
//!   (Bell-diagonal, Werner, X-type, the one-parameter family `example2`).
//! - [`battery`]: Hamiltonians, capacity, ergotropy and extremal energies.
//! - [`measurement`]: local measurements on B, the two mixing schemes and
//!   capacity-gain reports.
//! - [`sweep`]: parameter sweeps and their CSV/JSON encodings.

#![forbid(unsafe_code)]

pub mod battery;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod sampling;
pub mod states;
pub mod sweep;
pub mod tol;

pub use battery::{
    capacity, ergotropy, extremal_energies, qubit_pair_hamiltonian, subsystem_a_hamiltonian,
    CapacityValue, EnergyRange, Hamiltonian, QubitPairEnergies,
};
pub use error::{Error, Result};
pub use linalg::{eigh, haar_unitary, kron, partial_trace_b, ComplexMatrix, Spectrum};
pub use measurement::{
    capacity_gain, final_state_uniform, final_state_weighted, measure_b, CapacityGainReport,
    MeasurementBasis, MeasurementEnsemble, MixingWeights, Scheme,
};
pub use num_complex::Complex64;
pub use states::{
    bell_diagonal, bloch_coefficients, example2, is_entangled, werner, x_state,
    BlochCoefficients, DensityMatrix, XStateParams,
};
