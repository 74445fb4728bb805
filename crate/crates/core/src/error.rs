use thiserror::Error;

/// Errors produced by the combinatorial, algebraic and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition has crossing blocks")]
    Crossing,

    #[error("expected an even ground-set size, got {0}")]
    OddSize(usize),

    #[error("not a pair partition")]
    NotPairPartition,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("equal neighboring indices at position {0}")]
    EqualNeighbors(usize),

    #[error("sequence is not a valley sequence")]
    NotValley,

    #[error("empty sequence")]
    Empty,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
