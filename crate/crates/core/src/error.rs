use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The function has the same sign at both ends of the bracket.
    #[error("no sign change on [{lo:e}, {hi:e}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root solver did not converge in {max_iter} iterations (last x = {last:e})")]
    MaxIterExceeded { max_iter: usize, last: f64 },

    /// An argument lies outside the domain where the formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested configuration has no stable equilibrium.
    #[error("unstable: {0}")]
    Unstable(String),

    #[error("series not converged at n_max = {n_max}: last term {last_term:e} exceeds {bound:e}")]
    SeriesNotConverged { n_max: usize, last_term: f64, bound: f64 },

    #[error("invalid {name} = {value:e}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unstable(msg: impl Into<String>) -> Self {
        Error::Unstable(msg.into())
    }
}

/// Checks used by constructors.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be finite and > 0" })
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be finite and >= 0" })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be finite" })
    }
}
