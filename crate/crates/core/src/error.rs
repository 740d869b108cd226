//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the exact polyhedral kernels.
///
/// Verification outcomes (a hull that does not match a prediction, a width
/// below a bound) are *not* errors: they are reported through the various
/// report structs so that callers can print witnesses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("origin is not strictly interior to the polytope")]
    OriginNotInterior,
    #[error("facets {from} and {to} are not connected in the dual graph")]
    Disconnected { from: usize, to: usize },
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("both base facets are simplices (n = 2d); no suspension step is possible")]
    BothBasesSimplices,
    #[error("retries exhausted: {0}")]
    RetriesExhausted(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown gallery item `{0}`")]
    UnknownGallery(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
