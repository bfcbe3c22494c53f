use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("grid mismatch between channel matrices")]
    GridMismatch,
    #[error("expected {expected} bits, got {actual}")]
    BitCount { expected: usize, actual: usize },
    #[error("unsupported constellation order {0} (must be 4, 16, 64, ...)")]
    UnsupportedOrder(usize),
    #[error("invalid link profile: {0}")]
    InvalidProfile(String),
    #[error("delay index {index} does not fit in a frame of {bins} delay bins")]
    DelayOverflow { index: usize, bins: usize },
    #[error("delay {0} s is not an integer multiple of the delay resolution")]
    FractionalDelay(f64),
    #[error("Doppler truncation {n_prime} must be below N/2 = {half}")]
    DopplerTruncation { n_prime: usize, half: f64 },
    #[error("phase entry {index} has modulus {modulus}, expected 1")]
    NotUnitModulus { index: usize, modulus: f64 },
    #[error("invalid optimizer setting: {0}")]
    InvalidOptimizer(String),
    #[error("linear system is singular (pivot {pivot} at row {row})")]
    Singular { row: usize, pivot: f64 },
    #[error("invalid noise variance {0}")]
    InvalidNoise(f64),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("config error in `{key}`: {message}")]
    Config { key: String, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { key: key.into(), message: message.into() }
    }
}
