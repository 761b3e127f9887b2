use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("index {index} out of range for {what} of length {len}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("{what} is empty")]
    Empty { what: &'static str },

    #[error("negative or non-finite probability {value} at index {index}")]
    InvalidProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("membership grade {value} at ({row}, {col}) outside [0, 1]")]
    MembershipOutOfRange { row: usize, col: usize, value: f64 },

    #[error("membership row {row} has no grade above the floor")]
    EmptyMembershipRow { row: usize },

    #[error("logical probability of set {row} is {value}, set is degenerate")]
    DegenerateSet { row: usize, value: f64 },

    #[error("prior has zero mass at index {index}; full support required")]
    ZeroSupport { index: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("problem too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("solver did not converge: {0}")]
    NotConverged(String),
}

pub type Result<T> = std::result::Result<T, Error>;
