use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("inconsistent: {0}")]
    Inconsistent(String),

    #[error("unreachable case: {0}")]
    Unreachable(String),

    #[error("no closed-form case matched for ({a},{b},{c}) mod {p}")]
    CaseFallthrough { a: i64, b: i64, c: i64, p: u64 },

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("unknown item `{0}`")]
    UnknownItem(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
