use thiserror::Error;

/// Errors produced by the matrix, range and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension must be positive")]
    ZeroDimension,
    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("expected {expected} entries for the given dimension, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e})")]
    NonHermitianInput { asymmetry: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("operator is zero: its numerical range is {{0}}")]
    ZeroOperator,
    #[error("set is {{0}}: no nonzero point of maximal modulus")]
    ZeroSet,
    #[error("point set is empty")]
    EmptySet,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("operator is not normaloid (w/||A|| = {ratio})")]
    NotNormaloid { ratio: f64 },
    #[error("|lambda| = {modulus} lies outside the disk of radius {radius}")]
    LambdaOutOfDisk { modulus: f64, radius: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid ensemble spec: {0}")]
    InvalidSpec(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
