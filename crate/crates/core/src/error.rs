use thiserror::Error;

/// Errors raised by the geometry kernel, the decision procedures and the
/// dataset layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value: {0}")]
    NonFinite(&'static str),

    #[error("negative radicand {0}")]
    NegativeRadicand(f64),

    #[error("degenerate segment: {0}")]
    DegenerateSegment(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("duplicate curve id {0:?}")]
    DuplicateId(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
