//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("party {party}: digit {digit} out of range for local dimension {dim}")]
    DigitOutOfRange {
        party: usize,
        digit: u32,
        dim: u32,
    },

    #[error("dimension mismatch: {0}")]
    DimsMismatch(String),

    #[error("basis labels out of range for dims {dims}: {labels:?}")]
    IndexOutOfRange { dims: String, labels: Vec<String> },

    #[error("state set is not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("measured parties must form a nonempty strict subset of all parties")]
    BadMeasuredSet,

    #[error("constraint system has {unknowns} unknowns; dense solve capped at {limit}")]
    TooLarge { unknowns: usize, limit: usize },

    #[error("need at least two states, got {0}")]
    TooFewStates(usize),

    #[error("lemma hypothesis not established: {0}")]
    HypothesisNotEstablished(String),

    #[error("invalid parameters: {0}")]
    BadParameters(String),

    #[error("malformed state-set document: {0}")]
    BadDocument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
