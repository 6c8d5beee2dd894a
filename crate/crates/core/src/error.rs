use thiserror::Error;

/// Errors raised by parameter validation, the generators and the analysis tools.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RacahError {
    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("b - a = {0} is not an integer")]
    NonIntegerSize(f64),

    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("value leaves the double-precision range: {0}")]
    Overflow(String),

    #[error("hypergeometric denominator vanishes at term {term}")]
    PoleError { term: usize },

    #[error("size {size} exceeds the limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("numerical breakdown at n={n}, x={x}: {reason}")]
    NumericalBreakdown { n: usize, x: usize, reason: String },

    #[error("beta = {0} must be a nonnegative integer for this algorithm")]
    NonIntegerBeta(f64),

    #[error("row {row} is numerically dependent (norm {norm:e})")]
    DegenerateRow { row: usize, norm: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("reference signal is identically zero")]
    ZeroSignal,

    #[error("time budget of {budget_s} s exceeded")]
    TimeBudgetExceeded { budget_s: f64 },
}

impl RacahError {
    pub(crate) fn breakdown(n: usize, x: usize, reason: impl Into<String>) -> Self {
        RacahError::NumericalBreakdown {
            n,
            x,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, RacahError>;
