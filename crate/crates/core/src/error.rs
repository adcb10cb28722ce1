use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty segment: b = {b} exceeds e = {e}")]
    EmptySegment { b: i64, e: i64 },

    #[error("operation requires a nonzero multisegment")]
    EmptyMultisegment,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("instance too large for exhaustive enumeration ({size} > {limit})")]
    TooLarge { size: usize, limit: usize },

    #[error("coefficient support mismatch: {0}")]
    SupportMismatch(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
