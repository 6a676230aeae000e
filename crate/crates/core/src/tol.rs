//! Numerical tolerances used across the crate.
//!
//! The validation tolerance can be raised or lowered once per process with
//! [`set_validation`]; every other value is fixed.

use std::sync::OnceLock;

/// Hermiticity, trace and positivity checks on states and observables.
pub const VALIDATION: f64 = 1e-10;
/// Reconstruction of a matrix from its eigendecomposition.
pub const RECONSTRUCTION: f64 = 1e-11;
/// Jacobi stopping criterion on the relative off-diagonal Frobenius mass.
pub const SOLVER: f64 = 1e-14;
/// Jacobi sweep budget.
pub const MAX_SWEEPS: usize = 100;
/// Branches below this probability are treated as never occurring.
pub const ZERO_PROBABILITY: f64 = 1e-12;
/// Negative capacities above `-CAPACITY_CLAMP` are round-off and clamp to 0.
pub const CAPACITY_CLAMP: f64 = 1e-12;
/// Populations and mixing weights must sum to one within this.
pub const SUM_TO_ONE: f64 = 1e-12;
/// Projector completeness and orthogonality.
pub const PROJECTOR: f64 = 1e-11;

static VALIDATION_OVERRIDE: OnceLock<f64> = OnceLock::new();

/// Active validation tolerance: the override if one was set, else [`VALIDATION`].
pub fn validation() -> f64 {
    VALIDATION_OVERRIDE.get().copied().unwrap_or(VALIDATION)
}

/// Installs a process-wide validation tolerance. Returns `false` if one was
/// already installed or the value is not a positive finite number.
pub fn set_validation(value: f64) -> bool {
    if !(value.is_finite() && value > 0.0) {
        return false;
    }
    VALIDATION_OVERRIDE.set(value).is_ok()
}
