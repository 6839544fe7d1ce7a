use thiserror::Error;

/// Errors raised by the decay-point toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("component {index} is {value}, expected a nonnegative number")]
    NegativeComponent { index: usize, value: f64 },

    #[error("vector must have at least one component")]
    EmptyVector,

    #[error("cannot project the zero vector onto a sphere")]
    ZeroVector,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("scalar function rejected: {0}")]
    InvalidFunction(String),

    #[error("expected {expected} vertices, found {found}")]
    WrongCardinality { expected: usize, found: usize },

    #[error("vertex set is not complete")]
    NotComplete,

    #[error("cannot pivot on a vertex without a label")]
    MissingLabel,

    #[error("vertex coincides with a vertex already in the set")]
    DuplicateVertex,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no convergence after {iterations} iterations")]
    NotConverged { iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
