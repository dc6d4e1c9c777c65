//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchubertError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("validation error: {0}")]
    Validation(String),

    /// An algebraic postcondition failed; this signals a bug or a genuine
    /// counterexample to a verified identity, and always carries a
    /// reproducible witness.
    #[error("internal consistency: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SchubertError>;
