use thiserror::Error;

use crate::verify::ViolationReport;

/// Errors shared across the crate. Structural verification failures travel
/// as [`ViolationReport`]s inside [`Error::Violation`]; "no such object" and
/// "unknown" are not errors but ordinary outcomes (see `construct`).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("order mismatch: expected {expected}, got {got}")]
    OrderMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("partition sums to {got}, expected {expected}")]
    PartitionSumMismatch { expected: usize, got: usize },

    #[error("{0}")]
    Violation(ViolationReport),

    #[error("unknown asset `{0}`")]
    UnknownAsset(String),

    #[error("internal failure: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// The violation report, when this error wraps one.
    pub fn violation(&self) -> Option<&ViolationReport> {
        match self {
            Error::Violation(v) => Some(v),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
