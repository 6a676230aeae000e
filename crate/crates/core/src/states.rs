//! Density matrices and the two-qubit state families.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_argument, invalid_state, Error, Result};
use crate::linalg::{
    eigh, kron, partial_trace_b, partial_transpose_b, pauli_x, pauli_y, pauli_z, ComplexMatrix,
};
use crate::tol;

/// A validated quantum state on `C^dim_a ⊗ C^dim_b`.
///
/// Hermitian, unit trace and positive semidefinite within the validation
/// tolerance. The ascending spectrum is computed once on construction;
/// eigenvalues in `[-tol, 0)` are clamped to zero.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    spectrum: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::with_tolerance(matrix, dim_a, dim_b, tol::validation())
    }

    pub fn with_tolerance(
        matrix: ComplexMatrix,
        dim_a: usize,
        dim_b: usize,
        tolerance: f64,
    ) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || dim_a * dim_b != matrix.dim() {
            return Err(invalid_argument(format!(
                "a {}-dimensional state cannot be split as {dim_a}x{dim_b}",
                matrix.dim()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tolerance {
            return Err(invalid_state(format!(
                "matrix is not Hermitian (defect {defect:.3e})"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tolerance || trace.im.abs() > tolerance {
            return Err(invalid_state(format!(
                "trace is {:.12} + {:.3e}i, expected 1",
                trace.re, trace.im
            )));
        }
        // eigh enforces its own Hermiticity bound, so symmetrize first when a
        // looser tolerance was requested.
        let mut spectrum = eigh(&matrix.hermitian_part())?.values;
        if let Some(&min) = spectrum.first() {
            if min < -tolerance {
                return Err(invalid_state(format!(
                    "matrix is not positive semidefinite (min eigenvalue {min:.3e})"
                )));
            }
        }
        for v in &mut spectrum {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(Self {
            matrix,
            dim_a,
            dim_b,
            spectrum,
        })
    }

    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        let d = dim_a * dim_b;
        Self::new(ComplexMatrix::identity(d).scale(1.0 / d as f64), dim_a, dim_b)
            .expect("maximally mixed state is valid")
    }

    /// `|psi><psi|` for a normalized vector.
    pub fn pure(psi: &[Complex64], dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi), dim_a, dim_b)
    }

    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        Self::new(kron(&a.matrix, &b.matrix), a.dim(), b.dim())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Eigenvalues in ascending order.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dim_a == 2 && self.dim_b == 2
    }

    /// `Tr_B ρ` as a single-party state.
    pub fn reduced_a(&self) -> Result<DensityMatrix> {
        let m = partial_trace_b(&self.matrix, self.dim_a, self.dim_b)?;
        DensityMatrix::new(m, self.dim_a, 1)
    }

    pub fn to_json(&self) -> DensityMatrixJson {
        let n = self.dim();
        let rows = |f: fn(Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(self.matrix[(i, j)])).collect())
                .collect()
        };
        DensityMatrixJson {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn from_json(json: &DensityMatrixJson) -> Result<Self> {
        let n = json.re.len();
        if json.im.len() != n {
            return Err(invalid_argument("`re` and `im` have different row counts"));
        }
        let mut rows = Vec::with_capacity(n);
        for (i, (r, m)) in json.re.iter().zip(&json.im).enumerate() {
            if r.len() != m.len() {
                return Err(invalid_argument(format!(
                    "row {i}: `re` and `im` have different lengths"
                )));
            }
            rows.push(r.iter().zip(m).map(|(&a, &b)| Complex64::new(a, b)).collect());
        }
        DensityMatrix::new(ComplexMatrix::from_rows(rows)?, json.dim_a, json.dim_b)
    }
}

/// JSON form of a density matrix: row-major real and imaginary parts.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DensityMatrixJson {
    pub dim_a: usize,
    pub dim_b: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// Closed-form Bell-diagonal eigenvalues, in the order
/// `(1-c1-c2-c3, 1-c1+c2+c3, 1+c1-c2+c3, 1+c1+c2-c3) / 4`.
pub fn bell_diagonal_eigenvalues(c1: f64, c2: f64, c3: f64) -> [f64; 4] {
    [
        (1.0 - c1 - c2 - c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
    ]
}

/// `(I⊗I + Σ c_i σ_i⊗σ_i) / 4`.
pub fn bell_diagonal(c1: f64, c2: f64, c3: f64) -> Result<DensityMatrix> {
    if ![c1, c2, c3].iter().all(|c| c.is_finite()) {
        return Err(invalid_argument("Bell-diagonal coefficients must be finite"));
    }
    let tolerance = tol::validation();
    for (j, lambda) in bell_diagonal_eigenvalues(c1, c2, c3).iter().enumerate() {
        if *lambda < -tolerance || *lambda > 1.0 + tolerance {
            return Err(invalid_state(format!(
                "lambda_{j} = {lambda} lies outside [0, 1] for c = ({c1}, {c2}, {c3})"
            )));
        }
    }
    let mut m = ComplexMatrix::identity(4);
    for (c, p) in [(c1, pauli_x()), (c2, pauli_y()), (c3, pauli_z())] {
        m = &m + &kron(&p, &p).scale(c);
    }
    DensityMatrix::new(m.scale(0.25), 2, 2)
}

fn basis_ket(index: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 4];
    v[index] = Complex64::new(1.0, 0.0);
    v
}

/// `a |ψ⁻><ψ⁻| + (1-a) I/4` with `|ψ⁻> = (|01> - |10>)/√2`.
pub fn werner(a: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&a) {
        return Err(invalid_argument(format!("Werner parameter {a} outside [0, 1]")));
    }
    let mut singlet = vec![Complex64::new(0.0, 0.0); 4];
    singlet[1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    singlet[2] = Complex64::new(-FRAC_1_SQRT_2, 0.0);
    let m = &ComplexMatrix::outer(&singlet).scale(a)
        + &ComplexMatrix::identity(4).scale((1.0 - a) / 4.0);
    DensityMatrix::new(m, 2, 2)
}

/// `(1/3)[(1-x)|00><00| + 2|ψ⁺><ψ⁺| + x|11><11|]`, `|ψ⁺> = (|01> + |10>)/√2`,
/// for `x ∈ [0, 1/2]`.
pub fn example2(x: f64) -> Result<DensityMatrix> {
    if !(0.0..=0.5).contains(&x) {
        return Err(invalid_argument(format!("parameter x = {x} outside [0, 1/2]")));
    }
    let mut triplet = vec![Complex64::new(0.0, 0.0); 4];
    triplet[1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    triplet[2] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let m = &(&ComplexMatrix::outer(&basis_ket(0)).scale(1.0 - x)
        + &ComplexMatrix::outer(&triplet).scale(2.0))
        + &ComplexMatrix::outer(&basis_ket(3)).scale(x);
    DensityMatrix::new(m.scale(1.0 / 3.0), 2, 2)
}

/// Populations and anti-diagonal coherences of a two-qubit X state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XStateParams {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    #[serde(default)]
    pub rho14: Complex64,
    #[serde(default)]
    pub rho23: Complex64,
}

impl XStateParams {
    pub fn diagonal(rho11: f64, rho22: f64, rho33: f64, rho44: f64) -> Self {
        Self {
            rho11,
            rho22,
            rho33,
            rho44,
            rho14: Complex64::new(0.0, 0.0),
            rho23: Complex64::new(0.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let pops = [self.rho11, self.rho22, self.rho33, self.rho44];
        let finite = pops.iter().all(|p| p.is_finite())
            && [self.rho14, self.rho23]
                .iter()
                .all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(invalid_argument("X-state parameters must be finite"));
        }
        if let Some(i) = pops.iter().position(|&p| p < 0.0) {
            return Err(invalid_state(format!(
                "population rho{0}{0} = {1} is negative",
                i + 1,
                pops[i]
            )));
        }
        let sum: f64 = pops.iter().sum();
        if (sum - 1.0).abs() > tol::SUM_TO_ONE {
            return Err(invalid_state(format!("populations sum to {sum}, expected 1")));
        }
        let slack = tol::validation();
        if self.rho22 * self.rho33 - self.rho23.norm_sqr() < -slack {
            return Err(invalid_state("violates rho22*rho33 >= |rho23|^2"));
        }
        if self.rho11 * self.rho44 - self.rho14.norm_sqr() < -slack {
            return Err(invalid_state("violates rho11*rho44 >= |rho14|^2"));
        }
        Ok(())
    }

    /// The four X-state eigenvalues from the 2x2 outer and inner blocks,
    /// sorted ascending.
    pub fn closed_form_spectrum(&self) -> [f64; 4] {
        let outer = (self.rho11 - self.rho44).powi(2) + 4.0 * self.rho14.norm_sqr();
        let inner = (self.rho22 - self.rho33).powi(2) + 4.0 * self.rho23.norm_sqr();
        let mut v = [
            0.5 * ((self.rho11 + self.rho44) + outer.sqrt()),
            0.5 * ((self.rho11 + self.rho44) - outer.sqrt()),
            0.5 * ((self.rho22 + self.rho33) + inner.sqrt()),
            0.5 * ((self.rho22 + self.rho33) - inner.sqrt()),
        ];
        v.sort_by(f64::total_cmp);
        v
    }

    /// Entanglement test written directly on the X-state entries, with strict
    /// inequalities: `rho11 rho44 < |rho23|^2` or `rho22 rho33 < |rho14|^2`.
    pub fn entangled_by_inequality(&self) -> bool {
        self.rho11 * self.rho44 < self.rho23.norm_sqr()
            || self.rho22 * self.rho33 < self.rho14.norm_sqr()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_diagonal(&[self.rho11, self.rho22, self.rho33, self.rho44]);
        m[(0, 3)] = self.rho14;
        m[(3, 0)] = self.rho14.conj();
        m[(1, 2)] = self.rho23;
        m[(2, 1)] = self.rho23.conj();
        m
    }
}

pub fn x_state(p: &XStateParams) -> Result<DensityMatrix> {
    p.validate()?;
    DensityMatrix::new(p.to_matrix(), 2, 2)
}

/// Local Bloch vectors along z and the full correlation tensor of a two-qubit
/// state: `a3 = Tr[ρ σ3⊗I]`, `b3 = Tr[ρ I⊗σ3]`, `t[i][j] = Tr[ρ σ_i⊗σ_j]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochCoefficients {
    pub a3: f64,
    pub b3: f64,
    pub t: [[f64; 3]; 3],
}

impl BlochCoefficients {
    pub fn c1(&self) -> f64 {
        self.t[0][0]
    }

    pub fn c2(&self) -> f64 {
        self.t[1][1]
    }

    pub fn c3(&self) -> f64 {
        self.t[2][2]
    }

    /// `(I⊗I + a3 σ3⊗I + b3 I⊗σ3 + Σ t_ij σ_i⊗σ_j) / 4`. Exact for states
    /// whose x/y local Bloch components vanish, which includes all X states.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let id = ComplexMatrix::identity(2);
        let paulis = [pauli_x(), pauli_y(), pauli_z()];
        let mut m = &ComplexMatrix::identity(4) + &kron(&paulis[2], &id).scale(self.a3);
        m = &m + &kron(&id, &paulis[2]).scale(self.b3);
        for (i, pi) in paulis.iter().enumerate() {
            for (j, pj) in paulis.iter().enumerate() {
                m = &m + &kron(pi, pj).scale(self.t[i][j]);
            }
        }
        m.scale(0.25)
    }
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.is_two_qubit() {
        Ok(())
    } else {
        Err(invalid_argument(format!(
            "expected a 2x2 bipartite state, got {}x{}",
            rho.dim_a(),
            rho.dim_b()
        )))
    }
}

pub fn bloch_coefficients(rho: &DensityMatrix) -> Result<BlochCoefficients> {
    require_two_qubit(rho)?;
    let id = ComplexMatrix::identity(2);
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let m = rho.matrix();
    let mut t = [[0.0; 3]; 3];
    for (i, pi) in paulis.iter().enumerate() {
        for (j, pj) in paulis.iter().enumerate() {
            t[i][j] = m.trace_product_re(&kron(pi, pj));
        }
    }
    Ok(BlochCoefficients {
        a3: m.trace_product_re(&kron(&paulis[2], &id)),
        b3: m.trace_product_re(&kron(&id, &paulis[2])),
        t,
    })
}

/// Most negative eigenvalue of the partial transpose on B.
pub fn partial_transpose_min_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let pt = partial_transpose_b(rho.matrix(), 2, 2)?;
    let spectrum = eigh(&pt.hermitian_part())?;
    spectrum
        .values
        .first()
        .copied()
        .ok_or_else(|| Error::Numeric("empty spectrum".into()))
}

/// Peres-Horodecki test, exact for two qubits: entangled iff the partial
/// transpose has an eigenvalue below `-tol`.
pub fn is_entangled(rho: &DensityMatrix) -> Result<bool> {
    Ok(partial_transpose_min_eigenvalue(rho)? < -tol::validation())
}
