use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("{what} exceeds the configured bound of {bound}")]
    BoundExceeded { what: &'static str, bound: u64 },

    #[error("element is not in the group")]
    NotInGroup,

    #[error("generator correspondence does not define a homomorphism")]
    NotAHomomorphism,

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("fixture validation failed: {0}")]
    FixtureValidation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn bound(what: &'static str, bound: u64) -> Self {
        Error::BoundExceeded { what, bound }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
