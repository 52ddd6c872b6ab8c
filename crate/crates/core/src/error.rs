use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a square in the coefficient field")]
    NotSquare(String),
    #[error("series precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),
    #[error("factor {0} could not be certified irreducible over Q")]
    Unsplit(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("theorem violation (implementation bug): {0}")]
    TheoremViolation(String),
    #[error("resampling exhausted after {0} attempts")]
    ResamplingExhausted(usize),
    #[error("operands live on different curves or fields: {0}")]
    Mismatch(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
