use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph or word text.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed input that violates a structural rule (duplicate vertex, self-loop, ...).
    #[error("invalid graph: {0}")]
    Validation(String),
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    /// A bounded search hit its configured cap.
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    /// An internal assertion failed. Always a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
