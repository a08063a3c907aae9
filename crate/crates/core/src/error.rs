use thiserror::Error;

/// Errors raised by the numerical layers (linalg, means, solvers, lab).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An eigenvalue (or scalar) fell outside the domain of the function being applied.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("ill-conditioned matrix (condition estimate {0:.3e})")]
    IllConditioned(f64),

    #[error("target {target} outside attainable range [{lo}, {hi}]")]
    OutOfRange { target: f64, lo: f64, hi: f64 },

    /// The ordering or ratio hypothesis of an inverse problem does not hold.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::InvalidInput(_) => "invalid-input",
            Self::Domain(_) => "domain",
            Self::IllConditioned(_) => "ill-conditioned",
            Self::OutOfRange { .. } => "out-of-range",
            Self::HypothesisViolated(_) => "hypothesis-violated",
            Self::NumericalFailure(_) => "numerical-failure",
        }
    }

    /// Errors caused by the caller's input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Self::InvalidInput(_) | Self::Domain(_))
    }
}
