use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input; `position` is a byte offset into the input.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// The input is well formed but outside the domain of the operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An enumeration was requested whose solution set is not finite.
    #[error("infinite enumeration: {0}")]
    Infinite(String),

    /// A bounded search ran out of candidates.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
