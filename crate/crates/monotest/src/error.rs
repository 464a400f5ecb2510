use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} outside domain [0, {n})")]
    PointOutOfDomain { point: u64, n: u64 },

    #[error("value {value} is not below the range bound {bound}")]
    ValueOutOfRange { value: String, bound: String },

    #[error("domain size {actual} does not match the poset ground set size {expected}")]
    DomainMismatch { expected: u64, actual: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: {0}")]
    Capacity(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("tester configuration: {0}")]
    Config(String),

    #[error("certificate construction failed: {0}")]
    Certificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}
