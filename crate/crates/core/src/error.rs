//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An input vector had the wrong length.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An argument failed validation before any computation started.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A linear solve (or another numeric step) could not produce a trustworthy
    /// result. `diagnostic` carries the conditioning evidence (pivot magnitude,
    /// relative residual, ...).
    #[error("numerical failure in {context}: {diagnostic}")]
    Numerical { context: String, diagnostic: String },

    /// A target column handed to the modular trainer contained a single class.
    #[error("degenerate targets for {model}: {reason}")]
    DegenerateTargets { model: String, reason: String },

    /// Every cell of a hyperparameter grid failed to train.
    #[error("grid search failed: no grid cell trained successfully")]
    GridSearchFailed,

    /// A persisted model file did not match the documented format.
    #[error("model file format error: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn numerical(context: impl Into<String>, diagnostic: impl Into<String>) -> Self {
        Error::Numerical {
            context: context.into(),
            diagnostic: diagnostic.into(),
        }
    }
}
