//! Small dense complex linear algebra (dimensions up to 8 or so).

mod eigh;
mod haar;
mod matrix;

pub use eigh::{eigh, Spectrum};
pub use haar::{haar_unitary, qr};
pub use matrix::{
    kron, partial_trace_b, partial_transpose_b, pauli_x, pauli_y, pauli_z, ComplexMatrix,
};
