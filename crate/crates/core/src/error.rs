//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file; carries the file and 1-based line number.
    #[error("parse error at {path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    /// Input violates a documented precondition or invariant.
    #[error("{0}")]
    Domain(String),

    /// Tensor shapes do not agree.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A NaN or infinity surfaced during computation.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Bad run configuration (unknown keys, invalid values).
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(path: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
