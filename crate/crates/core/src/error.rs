use thiserror::Error;

/// Errors raised by the density, quadrature, sampling and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BecError {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {name} = {value} ({constraint})")]
    Domain {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// Adaptive quadrature ran out of refinements before meeting its tolerance.
    #[error(
        "quadrature did not converge after {refinements} refinements: \
         estimate {estimate:e}, error estimate {error_estimate:e}, requested {requested:e}"
    )]
    Quadrature {
        estimate: f64,
        error_estimate: f64,
        requested: f64,
        refinements: usize,
    },

    /// The requested algorithm cannot run with these parameters.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A single draw exceeded the proposal cap.
    #[error("no proposal accepted within {limit} trials")]
    Runaway { limit: u64 },

    /// A verification configuration is unusable.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, BecError>;

pub(crate) fn domain(name: &'static str, value: f64, constraint: &'static str) -> BecError {
    BecError::Domain {
        name,
        value,
        constraint,
    }
}

/// Rejects NaN and negative values.
pub(crate) fn check_nonneg(name: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(domain(name, value, "must be finite and >= 0"))
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(domain(name, value, "must be finite and > 0"))
    }
}
