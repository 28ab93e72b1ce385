use thiserror::Error;

/// Errors produced by the numerical routines and the evaluation harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The sample cannot be normalised (no spread, or a tie where strict order is needed).
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// A parameter lies outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("solver failed: {0}")]
    Solver(String),

    /// Quadrature did not reach the requested tolerance.
    #[error("numerical failure: {message} (estimate {estimate:e}, error {error:e})")]
    Numeric {
        message: String,
        estimate: f64,
        error: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateSample(msg.into())
    }

    /// Whether the error stems from bad user input rather than a runtime failure.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidInput(_) | Error::Config(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
