use thiserror::Error;

/// Errors raised by the library. The CLI maps `InputDomain`/`Validation`/`Parse`/`Io`
/// to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("input-domain error: {0}")]
    InputDomain(String),

    /// Well-formed data that breaks a model invariant.
    #[error("validation error in {location}: {message}")]
    Validation { location: String, message: String },

    /// Malformed syntax, with line/column when the parser reports one.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::InputDomain(msg.into())
    }

    pub(crate) fn validation(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
