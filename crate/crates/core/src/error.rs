use thiserror::Error;

/// Errors produced by the library.
///
/// `Inconsistency` is special: it never comes from bad input. It means an
/// identity that must hold exactly (an exact division, a vanishing guard
/// coefficient) did not, which points at a bug in one of the tables.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation at index {index}: {reason}")]
    InvalidPermutation { index: usize, reason: String },

    #[error("n = {n} exceeds the enumeration cap {cap} (raise it with --cap)")]
    CapExceeded { n: usize, cap: usize },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("non-finite accumulator at sample {sample}")]
    NonFinite { sample: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
