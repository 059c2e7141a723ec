//! Normalized pure states and density operators tagged with tensor-factor
//! dimensions.
//!
//! A bipartite state with dims (N, M) reshapes row-major to the N×M amplitude
//! matrix `C` with `C[i,j]` the amplitude of `|i⟩⊗|j⟩`. Every module in the
//! workspace shares this convention.

use num_complex::Complex64;

use crate::decomp::{eigen_hermitian, sqrt_psd, svd};
use crate::matrix::{inner, vec_norm, ComplexMatrix};
use crate::{tol, LinalgError, Result};

/// Which tensor factor of a bipartite operator to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// Normalized state vector over a tensor product of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates the factor dimensions, the amplitude count, and unit norm
    /// (within `tol::NORM_TOL`).
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(LinalgError::EmptyDimension);
        }
        let total: usize = dims.iter().product();
        if amplitudes.len() != total {
            return Err(LinalgError::AmplitudeCountMismatch {
                expected: total,
                found: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFiniteEntry);
        }
        let norm = vec_norm(&amplitudes);
        if (norm - 1.0).abs() > tol::NORM_TOL {
            return Err(LinalgError::UnnormalizedState { norm });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector into a single-factor state.
    pub fn normalized(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if norm <= tol::ZERO_VECTOR {
            return Err(LinalgError::ZeroVector);
        }
        let scaled = amplitudes.iter().map(|z| z / norm).collect();
        Self::new(dims, scaled)
    }

    /// Computational basis state |k⟩ of the given dimension.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self {
            dims: vec![dim],
            amplitudes,
        }
    }

    /// The maximally entangled state (1/√N) Σ_i |i⟩|i⟩ on two N-dimensional
    /// factors.
    pub fn maximally_entangled(n: usize) -> Self {
        assert!(n >= 1);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n * n];
        let w = 1.0 / (n as f64).sqrt();
        for i in 0..n {
            amplitudes[i * n + i] = Complex64::new(w, 0.0);
        }
        Self {
            dims: vec![n, n],
            amplitudes,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn total_dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.total_dim() != other.total_dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.total_dim(),
                right: other.total_dim(),
            });
        }
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut amplitudes = Vec::with_capacity(self.total_dim() * other.total_dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        PureState { dims, amplitudes }
    }

    /// Row-major reshape of a two-factor state into its amplitude matrix.
    pub fn amplitude_matrix(&self) -> Result<ComplexMatrix> {
        if self.dims.len() != 2 {
            return Err(LinalgError::WrongFactorCount {
                expected: 2,
                found: self.dims.len(),
            });
        }
        ComplexMatrix::new(self.dims[0], self.dims[1], self.amplitudes.clone())
    }

    /// Inverse of [`amplitude_matrix`](Self::amplitude_matrix).
    pub fn from_amplitude_matrix(c: &ComplexMatrix) -> Result<PureState> {
        PureState::new(vec![c.rows(), c.cols()], c.entries().to_vec())
    }

    /// Rank-one projector |ψ⟩⟨ψ| as a density operator.
    pub fn projector(&self) -> DensityOperator {
        let n = self.total_dim();
        let m = ComplexMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityOperator {
            dims: self.dims.clone(),
            matrix: m,
        }
    }
}

/// |⟨a|b⟩|² for pure states of equal total dimension.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}

/// Positive unit-trace operator over a tensor product of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates hermiticity and unit trace within `tol::NORM_TOL` and
    /// positivity down to eigenvalues ≥ −`tol::NORM_TOL`.
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(LinalgError::EmptyDimension);
        }
        let total: usize = dims.iter().product();
        if matrix.rows() != total || matrix.cols() != total {
            return Err(LinalgError::AmplitudeCountMismatch {
                expected: total,
                found: matrix.rows(),
            });
        }
        if !matrix.is_hermitian(tol::NORM_TOL) {
            return Err(LinalgError::NotHermitian);
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol::NORM_TOL || trace.im.abs() > tol::NORM_TOL {
            return Err(LinalgError::TraceNotOne { trace: trace.re });
        }
        let (vals, _) = eigen_hermitian(&matrix);
        if let Some(&min) = vals.last() {
            if min < -tol::NORM_TOL {
                return Err(LinalgError::NotPositive { min_eigenvalue: min });
            }
        }
        Ok(Self { dims, matrix })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn total_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Eigenvalues sorted descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigen_hermitian(&self.matrix).0
    }

    /// Reduced operator on the kept factor of a two-factor system.
    pub fn partial_trace(&self, keep: Factor) -> Result<DensityOperator> {
        if self.dims.len() != 2 {
            return Err(LinalgError::WrongFactorCount {
                expected: 2,
                found: self.dims.len(),
            });
        }
        let (da, db) = (self.dims[0], self.dims[1]);
        let out = match keep {
            Factor::First => ComplexMatrix::from_fn(da, da, |i, j| {
                (0..db).map(|k| self.matrix.get(i * db + k, j * db + k)).sum()
            }),
            Factor::Second => ComplexMatrix::from_fn(db, db, |i, j| {
                (0..da).map(|k| self.matrix.get(k * db + i, k * db + j)).sum()
            }),
        };
        let dim = out.rows();
        DensityOperator::new(vec![dim], out)
    }
}

/// Schmidt form of a two-factor pure state: |Φ⟩ = Σ_k λ_k |a_k⟩|b_k⟩ with
/// λ sorted descending and orthonormal local bases as matrix columns.
#[derive(Debug, Clone)]
pub struct Schmidt {
    pub coefficients: Vec<f64>,
    pub basis_a: ComplexMatrix,
    pub basis_b: ComplexMatrix,
}

/// Schmidt decomposition via the SVD of the amplitude matrix; the
/// coefficients are its singular values.
pub fn schmidt_decompose(phi: &PureState) -> Result<Schmidt> {
    let c = phi.amplitude_matrix()?;
    let f = svd(&c);
    // C = U Σ V† means |Φ⟩ = Σ_k σ_k |u_k⟩ ⊗ |conj(v_k)⟩.
    Ok(Schmidt {
        coefficients: f.singular_values,
        basis_a: f.u,
        basis_b: f.v.conjugate(),
    })
}

/// Uhlmann fidelity [tr √(√a · b · √a)]² between density operators.
pub fn fidelity_mixed(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    if a.total_dim() != b.total_dim() {
        return Err(LinalgError::DimensionMismatch {
            left: a.total_dim(),
            right: b.total_dim(),
        });
    }
    let ra = sqrt_psd(a.matrix());
    let m = ra.matmul(b.matrix()).matmul(&ra);
    let (vals, _) = eigen_hermitian(&m);
    let root_sum: f64 = vals.iter().map(|&x| x.max(0.0).sqrt()).sum();
    Ok((root_sum * root_sum).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_unnormalized() {
        let r = PureState::new(vec![2], vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(r, Err(LinalgError::UnnormalizedState { .. })));
    }

    #[test]
    fn fidelity_hand_values() {
        let zero = PureState::basis_state(2, 0);
        let one = PureState::basis_state(2, 1);
        let s = 1.0 / 2.0f64.sqrt();
        let plus = PureState::new(vec![2], vec![c(s, 0.0), c(s, 0.0)]).unwrap();
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        assert!(fidelity(&zero, &one).unwrap().abs() < 1e-15);
        assert!((fidelity(&zero, &plus).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_dimension_mismatch() {
        let a = PureState::basis_state(2, 0);
        let b = PureState::basis_state(3, 0);
        assert!(fidelity(&a, &b).is_err());
    }

    #[test]
    fn partial_trace_bell_is_maximally_mixed() {
        let bell = PureState::maximally_entangled(2);
        let rho = bell.projector();
        let second = rho.partial_trace(Factor::Second).unwrap();
        let want = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(second.matrix().approx_eq(&want, 1e-15));
        let first = rho.partial_trace(Factor::First).unwrap();
        assert!((first.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!((second.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_product_state() {
        let s = PureState::basis_state(2, 0).tensor(&PureState::basis_state(2, 1));
        let rho = s.projector();
        let first = rho.partial_trace(Factor::First).unwrap();
        let want = PureState::basis_state(2, 0).projector();
        assert!(first.matrix().approx_eq(want.matrix(), 1e-15));
    }

    #[test]
    fn partial_trace_rejects_three_factors() {
        let s = PureState::basis_state(2, 0)
            .tensor(&PureState::basis_state(2, 0))
            .tensor(&PureState::basis_state(2, 0));
        assert!(s.projector().partial_trace(Factor::First).is_err());
    }

    #[test]
    fn schmidt_bell_and_product() {
        let bell = PureState::maximally_entangled(2);
        let s = schmidt_decompose(&bell).unwrap();
        let w = 1.0 / 2.0f64.sqrt();
        assert!((s.coefficients[0] - w).abs() < 1e-14);
        assert!((s.coefficients[1] - w).abs() < 1e-14);

        let prod = PureState::basis_state(2, 0).tensor(&PureState::basis_state(2, 0));
        let s = schmidt_decompose(&prod).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-14);
        assert!(s.coefficients[1].abs() < 1e-14);
    }

    #[test]
    fn mixed_fidelity_pure_case_matches() {
        let a = PureState::basis_state(2, 0);
        let s = 1.0 / 2.0f64.sqrt();
        let b = PureState::new(vec![2], vec![c(s, 0.0), c(s, 0.0)]).unwrap();
        let f = fidelity_mixed(&a.projector(), &b.projector()).unwrap();
        assert!((f - 0.5).abs() < 1e-12);
    }
}
