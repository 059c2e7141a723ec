//! Dense complex linear algebra for small-dimension quantum simulation:
//! matrices, normalized states, decompositions, and seeded Haar sampling.
//!
//! Factor dimensions stay small (≤ ~32), so the decompositions are cyclic
//! Jacobi and Householder routines rather than bindings to an external
//! BLAS/LAPACK. Accuracy at these sizes is near machine epsilon.

pub mod decomp;
pub mod matrix;
pub mod random;
pub mod state;

use thiserror::Error;

pub use decomp::{
    determinant, eigen_hermitian, inverse, qr, singular_values, smallest_singular_value, sqrt_psd,
    svd, Svd,
};
pub use matrix::{inner, vec_max_abs_diff, vec_norm, ComplexMatrix};
pub use num_complex::Complex64;
pub use random::{
    derive_seed, random_bipartite_state, random_density_operator, random_pure_state,
    random_unitary, rng_from_seed,
};
pub use state::{
    fidelity, fidelity_mixed, schmidt_decompose, DensityOperator, Factor, PureState, Schmidt,
};

/// Shared numeric tolerances. Comparisons between matrices and states use
/// the max-abs-entry metric against these thresholds.
pub mod tol {
    /// Normalization checks on states and density operators.
    pub const NORM_TOL: f64 = 1e-12;
    /// Normalization gate on operators entering protocol computations.
    pub const OP_NORM_TOL: f64 = 1e-9;
    /// Default equality tolerance for matrices and states.
    pub const DEFAULT_TOL: f64 = 1e-10;
    /// Below this, a measurement outcome probability is treated as zero and
    /// the conditional state is undefined.
    pub const ZERO_PROBABILITY: f64 = 1e-14;
    /// Marginal condition gate for the relative-state channel application.
    pub const MARGINAL_TOL: f64 = 1e-8;
    /// Kraus completeness gate.
    pub const COMPLETENESS_TOL: f64 = 1e-10;
    /// Smallest singular value below which a shared operator counts as
    /// singular for the matching construction.
    pub const INVERTIBILITY_TOL: f64 = 1e-10;
    /// Vectors shorter than this cannot be normalized meaningfully.
    pub const ZERO_VECTOR: f64 = 1e-300;
}

/// Errors from constructors and decompositions in this crate.
#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimensions must be positive")]
    EmptyDimension,
    #[error("{rows}x{cols} matrix cannot hold {len} entries")]
    EntryCountMismatch { rows: usize, cols: usize, len: usize },
    #[error("expected {expected} amplitudes, found {found}")]
    AmplitudeCountMismatch { expected: usize, found: usize },
    #[error("non-finite entry")]
    NonFiniteEntry,
    #[error("state norm {norm} is not 1")]
    UnnormalizedState { norm: f64 },
    #[error("cannot normalize a zero vector")]
    ZeroVector,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("trace {trace} is not 1")]
    TraceNotOne { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} tensor factors, found {found}")]
    WrongFactorCount { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
}

pub type Result<T> = std::result::Result<T, LinalgError>;
