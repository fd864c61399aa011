use thiserror::Error;

/// Failures surfaced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypergeometric series did not converge after {terms} terms (partial sum {partial_sum})")]
    SeriesNonConvergence { partial_sum: f64, terms: usize },

    #[error("no sign change on [{lo}, {hi}] after scanning {} points", scan.len())]
    NoSignChange {
        lo: f64,
        hi: f64,
        /// `(mu, f(mu))` pairs visited by the pre-scan.
        scan: Vec<(f64, f64)>,
    },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("singular linear system (zero pivot at row {0})")]
    SingularMatrix(usize),

    #[error("insufficient tail data: {0}")]
    InsufficientTail(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
