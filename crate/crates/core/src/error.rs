use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("multiplicity k = {k} is not allowed here: requires {requirement}")]
    Multiplicity { k: f64, requirement: &'static str },

    #[error("point {0} lies on a reflection hyperplane (an integer)")]
    IntegerPoint(f64),

    #[error("density at t = {t} is not certified: truncation requires t >= t_min = {t_min}")]
    Uncertified { t: f64, t_min: f64 },

    #[error("spectral series did not certify its tail within {terms} terms")]
    TruncationExhausted { terms: usize },

    #[error("truncated density is negative ({value:e}) beyond the clipping tolerance")]
    NegativeDensity { value: f64 },

    #[error(
        "E_x[int_0^t ds/sin^2(pi X_s)] is infinite for k = {k}; finite expectation requires k > 1/2"
    )]
    InfiniteExpectation { k: f64 },

    #[error("simulation produced a non-finite state at t = {t}")]
    NonFinite { t: f64 },

    #[error("empty sample")]
    EmptySample,

    #[error("affine Weyl group element overflowed the 64-bit translation range")]
    Overflow,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Errors caused by the caller's arguments, as opposed to numerical
    /// breakdown inside a computation.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Multiplicity { .. }
                | Error::IntegerPoint(_)
                | Error::Uncertified { .. }
                | Error::InfiniteExpectation { .. }
                | Error::EmptySample
        )
    }
}
