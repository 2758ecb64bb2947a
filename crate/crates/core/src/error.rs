use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid path at step {index}: {reason}")]
    InvalidPath { index: usize, reason: String },

    #[error("n = {requested} exceeds the enumeration cap {cap}")]
    ResourceLimit { requested: usize, cap: usize },

    #[error("series is not invertible: {0}")]
    NonInvertible(String),

    #[error("equation `{equation}` did not stabilise: coefficient of t^{degree} still moving")]
    NonContractive { equation: String, degree: usize },

    #[error("unsupported coefficient index: {0}")]
    UnsupportedIndex(String),

    #[error("index {index} out of range for {name} (stored up to {max})")]
    Range {
        name: String,
        index: usize,
        max: usize,
    },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
