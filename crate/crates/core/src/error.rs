use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alpha and beta must be positive (got alpha={alpha}, beta={beta})")]
    NonPositive { alpha: u64, beta: u64 },

    #[error("alpha={alpha} and beta={beta} are not coprime")]
    NotCoprime { alpha: u64, beta: u64 },

    #[error("coefficient {0} exceeds the supported maximum of 2^20")]
    CoefficientTooLarge(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Inputs fall outside the range where a closed form applies.
    #[error("outside the applicable regime: {0}")]
    Regime(String),

    #[error("operation requires s(n) > 2 but n={0} has s(n) = 2")]
    Degenerate(String),

    #[error("operation requires beta = 1 (got beta={0})")]
    NotBetaOne(u64),

    #[error("n={n} exceeds the brute-force cap {cap}")]
    AboveCap { n: u64, cap: u64 },

    /// Two computation routes disagreed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures that signal an engine bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
