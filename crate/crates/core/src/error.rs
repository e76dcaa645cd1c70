//! Error types, one enum per subsystem.

use thiserror::Error;

/// Failures of the dense linear-algebra kernel.
#[derive(Debug, Clone, Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (relative deviation {deviation:.3e}, tolerance {tol:.3e})")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error("iteration failed to converge within {0} steps")]
    NoConvergence(usize),
    #[error("selected eigenvalue cluster cannot be separated (gap {gap:.3e} <= {tol:.3e})")]
    InseparableCluster { gap: f64, tol: f64 },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("matrix exponential left the representable range")]
    Overflow,
}

/// Failures while searching for intertwining operators.
#[derive(Debug, Clone, Error)]
pub enum IntertwinerError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("intertwiner basis is empty")]
    EmptyBasis,
    #[error("no invertible combination found after {tries} tries")]
    NoInvertibleFound { tries: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Failures of the Krein classification layer.
#[derive(Debug, Clone, Error)]
pub enum KreinError {
    #[error("G does not intertwine H (residual {residual:.3e} > {tol:.3e})")]
    NotAnIntertwiner { residual: f64, tol: f64 },
    #[error("G is numerically singular")]
    SingularG,
    #[error("cluster is not real; use the complex-pair path")]
    ComplexCluster,
    #[error("cluster is not of indefinite kind")]
    NotIndefinite,
    #[error("breaking construction supports two-fold clusters only (got {0})")]
    UnsupportedMultiplicity(usize),
    #[error("on the diabolic point a = 0; the Chern number is undefined there")]
    OnDiabolicPoint,
    #[error("operator {index} is not unitary (deviation {deviation:.3e})")]
    NotUnitary { index: usize, deviation: f64 },
    #[error("complex eigenvalues do not pair with their conjugates")]
    ConjugatePairingViolated,
    #[error("expected the diagonalized two-level form: {0}")]
    CanonicalFormRequired(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Failures while instantiating model Hamiltonians.
#[derive(Debug, Clone, Error)]
pub enum ModelError {
    #[error("onsite potentials are not inversion symmetric")]
    NotInversionSymmetric,
    #[error("the doubled lattice block requires k not in {{0, pi}}")]
    InvalidWaveNumber,
    #[error("stiffness matrix is not symmetric")]
    NotSymmetric,
    #[error("the shifted-frame intertwiner G_a is singular for this tau")]
    SingularGa,
    #[error("G is numerically singular")]
    SingularG,
    #[error("unknown parameter `{0}` for this model")]
    UnknownParameter(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Failures of time evolution.
#[derive(Debug, Clone, Error)]
pub enum DynamicsError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("propagator norm would exceed 1e150 (broken-phase growth out of range)")]
    Overflow,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Failures of parameter-space exploration.
#[derive(Debug, Clone, Error)]
pub enum SweepError {
    #[error("predicate does not change across the bracket")]
    NoSignChange,
    #[error("no degeneracy found in the bracket (smallest gap {best_gap:.3e})")]
    NoDegeneracyFound { best_gap: f64 },
    #[error("parameter `{0}` cannot be swept for this model")]
    UnknownParameter(String),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Krein(#[from] KreinError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
