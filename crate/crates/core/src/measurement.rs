//! Rank-1 projective measurements on subsystem B and the capacity change
//! they produce.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::battery::{capacity, qubit_pair_hamiltonian, subsystem_a_hamiltonian, CapacityValue, QubitPairEnergies};
use crate::error::{invalid_argument, Error, Result};
use crate::linalg::{kron, ComplexMatrix};
use crate::states::DensityMatrix;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BasisKind {
    /// `Π_k = |k><k|`.
    Computational,
    /// `Π_k = V|k><k|V†` where `V|0>` has Bloch angles `(theta, phi)`.
    Rotated { theta: f64, phi: f64 },
}

/// A complete set of orthogonal rank-1 projectors on subsystem B.
#[derive(Clone, Debug)]
pub struct MeasurementBasis {
    kind: BasisKind,
    projectors: Vec<ComplexMatrix>,
}

impl MeasurementBasis {
    pub fn computational(dim_b: usize) -> Result<Self> {
        if dim_b == 0 {
            return Err(invalid_argument("measured subsystem must have dimension >= 1"));
        }
        let projectors = (0..dim_b)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(dim_b);
                p[(k, k)] = Complex64::new(1.0, 0.0);
                p
            })
            .collect();
        Ok(Self {
            kind: BasisKind::Computational,
            projectors,
        })
    }

    /// Qubit basis `{|n>, |n_⊥>}` with
    /// `|n> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
    pub fn rotated(theta: f64, phi: f64) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite()) {
            return Err(invalid_argument("basis angles must be finite"));
        }
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let e = Complex64::from_polar(1.0, phi);
        let up = [Complex64::new(c, 0.0), e * s];
        let down = [-e.conj() * s, Complex64::new(c, 0.0)];
        let basis = Self {
            kind: BasisKind::Rotated { theta, phi },
            projectors: vec![ComplexMatrix::outer(&up), ComplexMatrix::outer(&down)],
        };
        basis.check()?;
        Ok(basis)
    }

    pub fn from_kind(kind: BasisKind, dim_b: usize) -> Result<Self> {
        match kind {
            BasisKind::Computational => Self::computational(dim_b),
            BasisKind::Rotated { theta, phi } => {
                if dim_b != 2 {
                    return Err(invalid_argument("rotated bases are defined for qubits only"));
                }
                Self::rotated(theta, phi)
            }
        }
    }

    fn check(&self) -> Result<()> {
        let n = self.dim_b();
        let mut sum = ComplexMatrix::zeros(n);
        for (k, pk) in self.projectors.iter().enumerate() {
            sum = &sum + pk;
            for (j, pj) in self.projectors.iter().enumerate() {
                let want = if j == k { pk.clone() } else { ComplexMatrix::zeros(n) };
                if (pk * pj).max_abs_diff(&want) > tol::PROJECTOR {
                    return Err(Error::Numeric(format!("projectors {k} and {j} are not orthogonal")));
                }
            }
            if (pk.trace().re - 1.0).abs() > tol::PROJECTOR {
                return Err(Error::Numeric(format!("projector {k} is not rank 1")));
            }
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(n)) > tol::PROJECTOR {
            return Err(Error::Numeric("projectors do not sum to the identity".into()));
        }
        Ok(())
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn dim_b(&self) -> usize {
        self.projectors.len()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }
}

/// One measurement outcome. `state` is `None` when the outcome has
/// probability below `tol::ZERO_PROBABILITY` and so never occurs.
#[derive(Clone, Debug)]
pub struct Branch {
    pub probability: f64,
    pub state: Option<DensityMatrix>,
}

#[derive(Clone, Debug)]
pub struct MeasurementEnsemble {
    pub branches: Vec<Branch>,
    pub basis: MeasurementBasis,
}

impl MeasurementEnsemble {
    pub fn probabilities(&self) -> Vec<f64> {
        self.branches.iter().map(|b| b.probability).collect()
    }

    fn dims(&self) -> (usize, usize) {
        let s = self
            .branches
            .iter()
            .find_map(|b| b.state.as_ref())
            .expect("at least one branch occurs");
        (s.dim_a(), s.dim_b())
    }
}

/// Outcome branches `ρ_k = (I⊗Π_k) ρ (I⊗Π_k) / P_k`.
pub fn measure_b(rho: &DensityMatrix, basis: &MeasurementBasis) -> Result<MeasurementEnsemble> {
    if rho.dim_b() != basis.dim_b() {
        return Err(invalid_argument(format!(
            "state has dim_b = {}, basis measures dimension {}",
            rho.dim_b(),
            basis.dim_b()
        )));
    }
    let id_a = ComplexMatrix::identity(rho.dim_a());
    let mut branches = Vec::with_capacity(basis.dim_b());
    for projector in basis.projectors() {
        let k = kron(&id_a, projector);
        let unnormalized = &(&k * rho.matrix()) * &k;
        let probability = unnormalized.trace().re;
        let state = if probability < tol::ZERO_PROBABILITY {
            None
        } else {
            Some(DensityMatrix::new(
                unnormalized.scale(1.0 / probability),
                rho.dim_a(),
                rho.dim_b(),
            )?)
        };
        branches.push(Branch {
            probability: probability.max(0.0),
            state,
        });
    }
    assert!(
        branches.iter().any(|b| b.state.is_some()),
        "a valid state has at least one outcome with nonzero probability"
    );
    Ok(MeasurementEnsemble {
        branches,
        basis: basis.clone(),
    })
}

/// Unweighted average `(1/n) Σ_k ρ_k` of the normalized branch states.
///
/// This equals the dephased state only when all outcomes are equally likely.
pub fn final_state_uniform(ens: &MeasurementEnsemble) -> Result<DensityMatrix> {
    let n = ens.branches.len();
    let weights = vec![1.0 / n as f64; n];
    if let Some(outcome) = ens.branches.iter().position(|b| b.state.is_none()) {
        return Err(Error::UndefinedAverage { outcome });
    }
    mix(ens, &weights)
}

/// `Σ_k μ_k ρ_k`.
pub fn final_state_weighted(ens: &MeasurementEnsemble, w: &MixingWeights) -> Result<DensityMatrix> {
    if w.len() != ens.branches.len() {
        return Err(invalid_argument(format!(
            "{} weights for {} outcomes",
            w.len(),
            ens.branches.len()
        )));
    }
    for (k, (b, &mu)) in ens.branches.iter().zip(w.as_slice()).enumerate() {
        if b.state.is_none() && mu > 0.0 {
            return Err(invalid_argument(format!(
                "weight {mu} on outcome {k}, which has zero probability"
            )));
        }
    }
    mix(ens, w.as_slice())
}

fn mix(ens: &MeasurementEnsemble, weights: &[f64]) -> Result<DensityMatrix> {
    let (dim_a, dim_b) = ens.dims();
    let mut m = ComplexMatrix::zeros(dim_a * dim_b);
    for (b, &mu) in ens.branches.iter().zip(weights) {
        if let Some(s) = &b.state {
            m = &m + &s.matrix().scale(mu);
        }
    }
    DensityMatrix::new(m, dim_a, dim_b)
}

/// Probabilities `μ_k ≥ 0` summing to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWeights")]
pub struct MixingWeights {
    mu: Vec<f64>,
}

#[derive(Deserialize)]
struct RawWeights {
    mu: Vec<f64>,
}

impl TryFrom<RawWeights> for MixingWeights {
    type Error = Error;

    fn try_from(raw: RawWeights) -> Result<Self> {
        Self::new(raw.mu)
    }
}

impl MixingWeights {
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        if mu.is_empty() {
            return Err(invalid_argument("at least one mixing weight is required"));
        }
        if let Some(bad) = mu.iter().find(|m| !m.is_finite() || **m < 0.0) {
            return Err(invalid_argument(format!("mixing weight {bad} is not a probability")));
        }
        let sum: f64 = mu.iter().sum();
        if (sum - 1.0).abs() > tol::SUM_TO_ONE {
            return Err(invalid_argument(format!("mixing weights sum to {sum}, expected 1")));
        }
        Ok(Self { mu })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

/// How the post-measurement branches are combined into a final state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Scheme {
    Uniform,
    Weighted(MixingWeights),
}

impl Scheme {
    pub fn final_state(&self, ens: &MeasurementEnsemble) -> Result<DensityMatrix> {
        match self {
            Scheme::Uniform => final_state_uniform(ens),
            Scheme::Weighted(w) => final_state_weighted(ens, w),
        }
    }
}

/// Capacities of the whole system and of subsystem A before and after the
/// measurement, with `big_f` and `small_f` their respective changes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityGainReport {
    pub c_before_total: CapacityValue,
    pub c_after_total: CapacityValue,
    pub c_before_a: CapacityValue,
    pub c_after_a: CapacityValue,
    pub big_f: f64,
    pub small_f: f64,
    pub scheme: Scheme,
}

pub fn capacity_gain(
    rho: &DensityMatrix,
    e: QubitPairEnergies,
    basis: &MeasurementBasis,
    scheme: &Scheme,
) -> Result<CapacityGainReport> {
    if !rho.is_two_qubit() {
        return Err(invalid_argument("capacity gain is defined for two-qubit states"));
    }
    let h_ab = qubit_pair_hamiltonian(e);
    let h_a = subsystem_a_hamiltonian(e);
    let after = scheme.final_state(&measure_b(rho, basis)?)?;

    let c_before_total = capacity(rho, &h_ab)?;
    let c_after_total = capacity(&after, &h_ab)?;
    let c_before_a = capacity(&rho.reduced_a()?, &h_a)?;
    let c_after_a = capacity(&after.reduced_a()?, &h_a)?;
    Ok(CapacityGainReport {
        c_before_total,
        c_after_total,
        c_before_a,
        c_after_a,
        big_f: c_after_total.value() - c_before_total.value(),
        small_f: c_after_a.value() - c_before_a.value(),
        scheme: scheme.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_diagonal, example2, werner, x_state, XStateParams};

    fn energies() -> QubitPairEnergies {
        QubitPairEnergies::new(0.5, 0.3).unwrap()
    }

    fn z() -> MeasurementBasis {
        MeasurementBasis::computational(2).unwrap()
    }

    fn diag_close(m: &DensityMatrix, want: &[f64], tol: f64) {
        let d = ComplexMatrix::from_diagonal(want);
        assert!(m.matrix().max_abs_diff(&d) < tol, "{:?} vs {want:?}", m.matrix());
    }

    #[test]
    fn bell_diagonal_branches() {
        let c3 = 0.2;
        let ens = measure_b(&bell_diagonal(0.5, -0.3, c3).unwrap(), &z()).unwrap();
        assert_eq!(ens.probabilities().len(), 2);
        for p in ens.probabilities() {
            assert!((p - 0.5).abs() < 1e-15);
        }
        diag_close(ens.branches[0].state.as_ref().unwrap(), &[(1.0 + c3) / 2.0, 0.0, (1.0 - c3) / 2.0, 0.0], 1e-15);
        diag_close(ens.branches[1].state.as_ref().unwrap(), &[0.0, (1.0 - c3) / 2.0, 0.0, (1.0 + c3) / 2.0], 1e-15);
    }

    #[test]
    fn x_state_branch_probabilities() {
        let mut p = XStateParams::diagonal(0.4, 0.1, 0.2, 0.3);
        p.rho14 = Complex64::new(0.1, 0.05);
        p.rho23 = Complex64::new(0.0, -0.1);
        let b3 = p.rho11 + p.rho33 - p.rho22 - p.rho44;
        let ens = measure_b(&x_state(&p).unwrap(), &z()).unwrap();
        assert!((ens.branches[0].probability - (1.0 + b3) / 2.0).abs() < 1e-15);
        assert!((ens.branches[1].probability - (1.0 - b3) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn product_eigenbranch() {
        let rho_a = DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.7, 0.3]), 2, 1).unwrap();
        let zero = DensityMatrix::new(ComplexMatrix::from_diagonal(&[1.0, 0.0]), 2, 1).unwrap();
        let rho = DensityMatrix::product(&rho_a, &zero).unwrap();
        let ens = measure_b(&rho, &z()).unwrap();
        assert_eq!(ens.branches[0].probability, 1.0);
        assert!(ens.branches[1].state.is_none());
        assert_eq!(ens.branches[0].state.as_ref().unwrap().matrix(), rho.matrix());

        assert!(matches!(final_state_uniform(&ens), Err(Error::UndefinedAverage { outcome: 1 })));
        let bad = MixingWeights::new(vec![0.5, 0.5]).unwrap();
        assert!(matches!(final_state_weighted(&ens, &bad), Err(Error::InvalidArgument(_))));
        let ok = MixingWeights::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(final_state_weighted(&ens, &ok).unwrap().matrix(), rho.matrix());
    }

    #[test]
    fn uniform_examples() {
        let c3 = -0.4;
        let ens = measure_b(&bell_diagonal(0.6, 0.5, c3).unwrap(), &z()).unwrap();
        let u = final_state_uniform(&ens).unwrap();
        diag_close(&u, &[(1.0 + c3) / 4.0, (1.0 - c3) / 4.0, (1.0 - c3) / 4.0, (1.0 + c3) / 4.0], 1e-15);

        let ens = measure_b(&example2(0.0).unwrap(), &z()).unwrap();
        diag_close(&final_state_uniform(&ens).unwrap(), &[0.25, 0.5, 0.25, 0.0], 1e-15);
    }

    #[test]
    fn uniform_of_identical_branches() {
        let flat = DensityMatrix::maximally_mixed(2, 2);
        let b = Branch { probability: 0.5, state: Some(flat.clone()) };
        let ens = MeasurementEnsemble { branches: vec![b.clone(), b], basis: z() };
        assert!(final_state_uniform(&ens).unwrap().matrix().max_abs_diff(flat.matrix()) < 1e-15);
    }

    #[test]
    fn weighted_examples() {
        let c3 = 0.3;
        let ens = measure_b(&bell_diagonal(-0.5, 0.4, c3).unwrap(), &z()).unwrap();
        let half = MixingWeights::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(
            final_state_weighted(&ens, &half).unwrap().matrix(),
            final_state_uniform(&ens).unwrap().matrix()
        );
        let (m0, m1) = (0.7, 0.3);
        let w = MixingWeights::new(vec![m0, m1]).unwrap();
        diag_close(
            &final_state_weighted(&ens, &w).unwrap(),
            &[m0 * (1.0 + c3) / 2.0, m1 * (1.0 - c3) / 2.0, m0 * (1.0 - c3) / 2.0, m1 * (1.0 + c3) / 2.0],
            1e-15,
        );

        let x = 0.3;
        let ens = measure_b(&example2(x).unwrap(), &z()).unwrap();
        diag_close(
            &final_state_weighted(&ens, &w).unwrap(),
            &[m0 * (1.0 - x) / (2.0 - x), m1 / (1.0 + x), m0 / (2.0 - x), m1 * x / (1.0 + x)],
            1e-15,
        );
    }

    #[test]
    fn weight_validation() {
        assert!(MixingWeights::new(vec![0.6, 0.6]).is_err());
        assert!(MixingWeights::new(vec![1.2, -0.2]).is_err());
        assert!(MixingWeights::new(vec![]).is_err());
        let ens = measure_b(&werner(0.3).unwrap(), &z()).unwrap();
        let three = MixingWeights::uniform(3).unwrap();
        assert!(matches!(final_state_weighted(&ens, &three), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn observation_one_capacities() {
        let c3 = -0.35;
        let r = capacity_gain(&bell_diagonal(0.7, 0.5, c3).unwrap(), energies(), &z(), &Scheme::Uniform).unwrap();
        assert!((r.c_after_total.value() - 2.0 * c3.abs() * 0.5).abs() < 1e-12);
        assert!(r.small_f.abs() < 1e-12);
        assert!(r.big_f <= 1e-12);
    }

    #[test]
    fn observation_two_subsystem() {
        let (m0, m1, c3) = (0.8, 0.2, 0.6);
        let scheme = Scheme::Weighted(MixingWeights::new(vec![m0, m1]).unwrap());
        let r = capacity_gain(&bell_diagonal(0.6, -0.6, c3).unwrap(), energies(), &z(), &scheme).unwrap();
        assert!((r.c_after_a.value() - 2.0 * (m0 - m1) * 0.5 * c3).abs() < 1e-12);
    }

    #[test]
    fn werner_break_even() {
        let a = 0.4;
        let scheme = Scheme::Weighted(MixingWeights::new(vec![(1.0 + a) / 2.0, (1.0 - a) / 2.0]).unwrap());
        let r = capacity_gain(&werner(a).unwrap(), energies(), &z(), &scheme).unwrap();
        assert!(r.big_f.abs() < 1e-12);
    }

    #[test]
    fn report_deltas_and_json() {
        let scheme = Scheme::Weighted(MixingWeights::new(vec![0.25, 0.75]).unwrap());
        let r = capacity_gain(&example2(0.1).unwrap(), energies(), &z(), &scheme).unwrap();
        assert_eq!(r.big_f, r.c_after_total.value() - r.c_before_total.value());
        assert_eq!(r.small_f, r.c_after_a.value() - r.c_before_a.value());
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["c_before_total", "c_after_total", "c_before_a", "c_after_a", "big_f", "small_f"] {
            assert!(v[key].is_f64(), "{key}");
        }
        assert_eq!(v["scheme"]["kind"], "weighted");
        assert_eq!(v["scheme"]["mu"][1], 0.75);
        let back: CapacityGainReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
        let u = serde_json::to_value(Scheme::Uniform).unwrap();
        assert_eq!(u, serde_json::json!({"kind": "uniform"}));
    }

    #[test]
    fn rotated_basis_contract() {
        let b = MeasurementBasis::rotated(1.1, 0.4).unwrap();
        assert_eq!(b.dim_b(), 2);
        assert!(MeasurementBasis::rotated(f64::NAN, 0.0).is_err());
        assert!(MeasurementBasis::from_kind(BasisKind::Rotated { theta: 0.1, phi: 0.0 }, 3).is_err());
        // θ = 0 reproduces the computational basis.
        let r0 = MeasurementBasis::rotated(0.0, 0.3).unwrap();
        for (p, q) in r0.projectors().iter().zip(z().projectors()) {
            assert!(p.max_abs_diff(q) < 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let rho = DensityMatrix::maximally_mixed(2, 2);
        assert!(measure_b(&rho, &MeasurementBasis::computational(3).unwrap()).is_err());
        let big = DensityMatrix::maximally_mixed(2, 3);
        let basis = MeasurementBasis::computational(3).unwrap();
        assert!(capacity_gain(&big, energies(), &basis, &Scheme::Uniform).is_err());
    }
}
