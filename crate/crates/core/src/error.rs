use thiserror::Error;

/// Errors raised by oracles, solvers and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The instance is too large for an exhaustive method.
    #[error("capability error: {what} (size {size}, limit {limit})")]
    Capability {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// Element (1-based) not covered by any sample, so the interpolation LP is unbounded.
    #[error("unbounded: element {element} is not covered by any sample")]
    Unbounded { element: usize },
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    /// A solver precondition (e.g. nonnegative data) does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn capability(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::Capability { what, size, limit })
    } else {
        Ok(())
    }
}
