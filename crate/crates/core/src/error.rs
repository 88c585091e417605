use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order p = {got} is out of range (expected {expected})")]
    InvalidOrder { got: usize, expected: &'static str },

    #[error("k = {k} is out of range for p = {p} (need 0 <= k <= p-1)")]
    KOutOfRange { k: usize, p: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no sign change of the polynomial on [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },

    #[error("root iteration did not converge after {iterations} iterations (best residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generator matrix is singular (last coefficient is zero)")]
    SingularGenerator,

    #[error("unknown Meru id {0} (expected 1..=9)")]
    UnknownMeru(u32),

    #[error("index {index} exceeds the available expansion length {available}")]
    IndexBeyondExpansion { index: usize, available: usize },

    #[error("degenerate breeding configuration: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
