use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),
    #[error("p = 2 is not supported here: the Picard and cohomology formulas require an odd prime")]
    EvenPrime,
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
