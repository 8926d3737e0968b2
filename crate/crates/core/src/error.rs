use thiserror::Error;

/// Errors produced by the witness toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix has {len} entries, expected {dim}x{dim}")]
    ShapeMismatch { dim: usize, len: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    NotNormalized { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("factor index {factor} out of range for {factors} factors")]
    FactorOutOfRange { factor: usize, factors: usize },

    #[error("factor {factor} has local dimension {dim}, expected a qubit")]
    NotQubit { factor: usize, dim: usize },

    #[error("mixing weight p = {p} outside positivity range [{min}, {max}]")]
    MixingOutOfRange { p: f64, min: f64, max: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("malformed phase diagram: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
