//! Error type shared by the whole crate.
//!
//! The four variants map one-to-one onto the machine-readable error codes
//! emitted by the CLI (`PARSE`, `BUDGET`, `PRECONDITION`, `CONSISTENCY`).

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Text input does not conform to the grammar. `pos` is a byte offset.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An explicitly configured search or enumeration budget was exceeded.
    /// Overruns are hard errors, never silent truncations.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal invariant that is guaranteed by a theorem failed to hold.
    /// This indicates a bug and is always reported loudly.
    #[error("consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// Stable machine-readable code for this error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE",
            Error::Budget(_) => "BUDGET",
            Error::Precondition(_) => "PRECONDITION",
            Error::Consistency(_) => "CONSISTENCY",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
