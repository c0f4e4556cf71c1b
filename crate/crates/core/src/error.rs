use thiserror::Error;

/// Everything that can go wrong in the exact engines.
///
/// Variants fall into three groups: caller mistakes (bad dimension, bad
/// input file), internal consistency violations (a proven identity failed
/// to hold, which means a bug), and checkpoint/resume failures. The CLI maps
/// each group to its own exit code via [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("division by zero in Q(ω_{order})")]
    DivisionByZero { order: u32 },

    #[error("{value} has no inverse modulo {modulus}")]
    NoInverse { value: i64, modulus: i64 },

    #[error("invalid modulus {0}: expected an odd positive integer")]
    InvalidModulus(i64),

    #[error("degenerate Gauss sum: quadratic coefficient {a} vanishes modulo {d}")]
    DegenerateGaussSum { a: i64, d: u32 },

    #[error("invalid dimension {d}: {reason}")]
    InvalidDimension { d: u32, reason: String },

    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("trivial zero-distribution class: n = {n} for d = {d}")]
    TrivialClass { d: u32, n: u32 },

    #[error("consistency violation ({check}): {detail}")]
    Consistency { check: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resume error: {0}")]
    Resume(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn consistency(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Consistency {
            check: check.into(),
            detail: detail.into(),
        }
    }

    pub fn invalid_dimension(d: u32, reason: impl Into<String>) -> Self {
        Error::InvalidDimension {
            d,
            reason: reason.into(),
        }
    }

    /// 2 for internal theorem violations, 3 for input errors, 4 for resume errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Consistency { .. } => 2,
            Error::Resume(_) => 4,
            _ => 3,
        }
    }
}
