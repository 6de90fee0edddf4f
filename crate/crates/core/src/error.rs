use thiserror::Error;

use crate::num::ArithError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("point {index} appears with conflicting labels")]
    ConflictingLabels { index: usize },
    #[error("dataset has {points} points, above the cap of {cap}")]
    CapExceeded { points: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid k-SUM instance: {0}")]
    InvalidInstance(String),
    #[error("gap violation: exact distance {exact} lies strictly between {yes_bound} and {no_bound}")]
    GapViolation {
        exact: String,
        yes_bound: String,
        no_bound: String,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("packing failed after {retries} retries (best max |<u,v>| = {best})")]
    PackingFailed { retries: usize, best: f64 },
    #[error("statistical-query error: {0}")]
    Sq(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error certifies a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::GapViolation { .. } | Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
