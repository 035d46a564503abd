use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not self-adjoint (max asymmetry {asymmetry:e})")]
    NotSelfAdjoint { asymmetry: f64 },
    #[error("matrix or vector contains non-finite entries")]
    NonFinite,
    #[error("matrix is not unitary (max deviation of U^dagger U from identity {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("probability vectors must be sorted in descending order")]
    UnsortedInput,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
