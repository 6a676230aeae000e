//! Hamiltonians and the spectral work functionals.
//!
//! For a state with ascending eigenvalues `λ` and a Hamiltonian with
//! ascending energies `ε`, unitary orbits of the state reach exactly the
//! energies in `[Σ λ↑ ε↓, Σ λ↑ ε↑]`. The capacity is the width of that window.
//! Pairing index `i` with `d-1-i` in the defining sum gives
//!
//! ```text
//! C = Σ_{i < d/2} (ε_{d-1-i} - ε_i)(λ_{d-1-i} - λ_i)
//! ```
//!
//! so `C` depends on sorted values only and degenerate levels need no care.

use serde::{Deserialize, Serialize};

use crate::error::{invalid_argument, Error, Result};
use crate::linalg::{eigh, kron, pauli_z, ComplexMatrix};
use crate::states::DensityMatrix;
use crate::tol;

/// A Hermitian observable with its ascending eigenenergies.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    matrix: ComplexMatrix,
    energies: Vec<f64>,
    basis: ComplexMatrix,
}

impl Hamiltonian {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let spectrum = eigh(&matrix)?;
        Ok(Self {
            matrix,
            energies: spectrum.values,
            basis: spectrum.vectors,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Column `i` is the eigenvector of `energies()[i]`.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Local level splittings `ε^A ≥ ε^B ≥ 0` of the two-qubit Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEnergies")]
pub struct QubitPairEnergies {
    eps_a: f64,
    eps_b: f64,
}

#[derive(Deserialize)]
struct RawEnergies {
    eps_a: f64,
    eps_b: f64,
}

impl TryFrom<RawEnergies> for QubitPairEnergies {
    type Error = Error;

    fn try_from(raw: RawEnergies) -> Result<Self> {
        Self::new(raw.eps_a, raw.eps_b)
    }
}

impl QubitPairEnergies {
    pub fn new(eps_a: f64, eps_b: f64) -> Result<Self> {
        if !(eps_a.is_finite() && eps_b.is_finite()) {
            return Err(invalid_argument("energies must be finite"));
        }
        if !(eps_a >= eps_b && eps_b >= 0.0) {
            return Err(invalid_argument(format!(
                "energies must satisfy eps_a >= eps_b >= 0 (got eps_a = {eps_a}, eps_b = {eps_b})"
            )));
        }
        Ok(Self { eps_a, eps_b })
    }

    pub fn eps_a(&self) -> f64 {
        self.eps_a
    }

    pub fn eps_b(&self) -> f64 {
        self.eps_b
    }
}

/// `ε^A σ3⊗I + ε^B I⊗σ3`.
pub fn qubit_pair_hamiltonian(e: QubitPairEnergies) -> Hamiltonian {
    let id = ComplexMatrix::identity(2);
    let m = &kron(&pauli_z(), &id).scale(e.eps_a) + &kron(&id, &pauli_z()).scale(e.eps_b);
    Hamiltonian::new(m).expect("diagonal Hamiltonian is Hermitian")
}

/// `ε^A σ3` on subsystem A.
pub fn subsystem_a_hamiltonian(e: QubitPairEnergies) -> Hamiltonian {
    Hamiltonian::new(pauli_z().scale(e.eps_a)).expect("diagonal Hamiltonian is Hermitian")
}

/// A nonnegative amount of energy.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CapacityValue(f64);

impl CapacityValue {
    /// Clamps round-off negatives in `[-CAPACITY_CLAMP, 0)` to zero and
    /// rejects anything more negative.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Numeric(format!("non-finite energy {value}")));
        }
        if value < -tol::CAPACITY_CLAMP {
            return Err(Error::Numeric(format!(
                "negative value {value:.3e} for a nonnegative functional"
            )));
        }
        Ok(Self(value.max(0.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<CapacityValue> for f64 {
    fn from(c: CapacityValue) -> f64 {
        c.0
    }
}

/// Lowest and highest mean energies on the unitary orbit of a state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyRange {
    pub min: f64,
    pub max: f64,
}

impl EnergyRange {
    pub fn width(&self) -> f64 {
        self.max - self.min
    }
}

fn check_dims(rho: &DensityMatrix, h: &Hamiltonian) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(invalid_argument(format!(
            "state dimension {} does not match Hamiltonian dimension {}",
            rho.dim(),
            h.dim()
        )));
    }
    Ok(())
}

/// `Σ_i ε_i (λ_i - λ_{d-1-i})` for ascending `λ` and `ε` of equal length.
pub fn capacity_from_spectra(lambda: &[f64], eps: &[f64]) -> Result<CapacityValue> {
    if lambda.len() != eps.len() {
        return Err(invalid_argument("spectra have different lengths"));
    }
    let d = lambda.len();
    let c = (0..d)
        .map(|i| eps[i] * (lambda[i] - lambda[d - 1 - i]))
        .sum::<f64>();
    CapacityValue::new(c)
}

pub fn capacity(rho: &DensityMatrix, h: &Hamiltonian) -> Result<CapacityValue> {
    check_dims(rho, h)?;
    capacity_from_spectra(rho.spectrum(), h.energies())
}

/// `Tr[ρH]`.
pub fn mean_energy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    check_dims(rho, h)?;
    Ok(rho.matrix().trace_product_re(h.matrix()))
}

/// `(Σ λ↑ε↓, Σ λ↑ε↑)`: the passive and the maximally active energies.
pub fn extremal_energies(rho: &DensityMatrix, h: &Hamiltonian) -> Result<EnergyRange> {
    check_dims(rho, h)?;
    let lambda = rho.spectrum();
    let eps = h.energies();
    let max = lambda.iter().zip(eps).map(|(l, e)| l * e).sum();
    let min = lambda.iter().zip(eps.iter().rev()).map(|(l, e)| l * e).sum();
    Ok(EnergyRange { min, max })
}

/// Maximal unitary work extraction, `Tr[ρH]` minus the passive energy.
pub fn ergotropy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<CapacityValue> {
    let range = extremal_energies(rho, h)?;
    CapacityValue::new(mean_energy(rho, h)? - range.min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_diagonal, werner};
    use num_complex::Complex64;

    fn h(a: f64, b: f64) -> Hamiltonian {
        qubit_pair_hamiltonian(QubitPairEnergies::new(a, b).unwrap())
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn qubit_pair_energy_levels() {
        let cases = [
            ((0.5, 0.3), [-0.8, -0.2, 0.2, 0.8]),
            ((1.0, 0.0), [-1.0, -1.0, 1.0, 1.0]),
            ((0.5, 0.5), [-1.0, 0.0, 0.0, 1.0]),
        ];
        for ((a, b), want) in cases {
            let e = h(a, b);
            for (got, want) in e.energies().iter().zip(want) {
                assert!(close(*got, want), "{:?}", e.energies());
            }
        }
    }

    #[test]
    fn energies_must_be_ordered() {
        assert!(QubitPairEnergies::new(0.3, 0.5).is_err());
        assert!(QubitPairEnergies::new(0.5, -0.1).is_err());
        assert!(QubitPairEnergies::new(f64::NAN, 0.0).is_err());
        assert!(serde_json::from_str::<QubitPairEnergies>(r#"{"eps_a":0.1,"eps_b":0.2}"#).is_err());
    }

    #[test]
    fn subsystem_hamiltonian() {
        let e = QubitPairEnergies::new(0.5, 0.0).unwrap();
        assert_eq!(subsystem_a_hamiltonian(e).energies(), &[-0.5, 0.5]);
        let zero = subsystem_a_hamiltonian(QubitPairEnergies::new(0.0, 0.0).unwrap());
        assert_eq!(zero.matrix(), &ComplexMatrix::zeros(2).scale(1.0));
        let half = DensityMatrix::maximally_mixed(2, 1);
        assert_eq!(capacity(&half, &subsystem_a_hamiltonian(e)).unwrap().value(), 0.0);
    }

    #[test]
    fn capacity_examples() {
        let flat = DensityMatrix::maximally_mixed(2, 2);
        assert_eq!(capacity(&flat, &h(0.7, 0.2)).unwrap().value(), 0.0);
        assert!(close(capacity(&werner(0.6).unwrap(), &h(0.5, 0.3)).unwrap().value(), 0.96));
        let bd = bell_diagonal(0.6, 0.3, 0.1).unwrap();
        assert!(close(capacity(&bd, &h(0.5, 0.3)).unwrap().value(), 0.78));
    }

    #[test]
    fn ergotropy_examples() {
        let e = h(0.5, 0.3);
        let ground = DensityMatrix::pure(
            &[0.0, 0.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0)),
            2,
            2,
        )
        .unwrap();
        // |11> is the ground state of ε^A σ3⊗I + ε^B I⊗σ3.
        assert!(ergotropy(&ground, &e).unwrap().value().abs() < 1e-12);
        let top = DensityMatrix::pure(
            &[1.0, 0.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0)),
            2,
            2,
        )
        .unwrap();
        assert!(close(ergotropy(&top, &e).unwrap().value(), 1.6));
        assert_eq!(ergotropy(&DensityMatrix::maximally_mixed(2, 2), &e).unwrap().value(), 0.0);
    }

    #[test]
    fn extremal_examples() {
        let e = h(0.5, 0.3);
        let r = extremal_energies(&DensityMatrix::maximally_mixed(2, 2), &e).unwrap();
        assert!(r.min.abs() < 1e-15 && r.max.abs() < 1e-15);
        let r = extremal_energies(&werner(0.6).unwrap(), &e).unwrap();
        assert!(close(r.min, -0.48) && close(r.max, 0.48));
        let r = extremal_energies(&bell_diagonal(0.6, 0.3, 0.1).unwrap(), &e).unwrap();
        assert!(close(r.max, 0.39) && close(r.min, -0.39));
    }

    #[test]
    fn dimension_mismatch() {
        let rho = DensityMatrix::maximally_mixed(2, 1);
        let e = h(0.5, 0.3);
        assert!(matches!(capacity(&rho, &e), Err(Error::InvalidArgument(_))));
        assert!(ergotropy(&rho, &e).is_err());
        assert!(extremal_energies(&rho, &e).is_err());
    }

    #[test]
    fn clamping() {
        assert_eq!(CapacityValue::new(-5e-13).unwrap().value(), 0.0);
        assert!(matches!(CapacityValue::new(-1e-9), Err(Error::Numeric(_))));
        assert!(CapacityValue::new(f64::INFINITY).is_err());
    }
}
