use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or adaptive scheme exhausted its budget before meeting its tolerance.
    #[error("no convergence in {what} after {work} steps (last estimate {estimate:e}, error {error:e})")]
    NoConvergence {
        what: &'static str,
        work: usize,
        estimate: f64,
        error: f64,
    },

    /// A truncated operator was requested with too few basis states.
    #[error("dimension {got} is too small, need at least {min}")]
    Dimension { got: usize, min: usize },

    /// A coherent-state amplitude sequence would be cut off with a tail above tolerance.
    #[error("truncation at {dim} states leaves relative norm tail {tail:e} (limit {limit:e})")]
    Truncation { dim: usize, tail: f64, limit: f64 },

    /// The integrand produced NaN or an infinity at an interior node.
    #[error("integrand returned a non-finite value at t = {at}")]
    NonFinite { at: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
