use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain an operation accepts.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A caller broke a precondition that the operation verifies.
    #[error("contract violation: {0}")]
    ContractViolation(String),
    /// A game file could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::ContractViolation(msg.into()))
}
