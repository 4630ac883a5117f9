use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A derivative or arc length was requested at or too close to a pole.
    #[error("pole at {pole} lies within {distance:e} of the evaluation set")]
    PoleProximity { pole: String, distance: f64 },

    /// The adaptive quadrature ran out of evaluations before meeting the tolerance.
    #[error(
        "quadrature did not converge after {evaluations} evaluations \
         (best estimate {estimate}, error bound {error_bound:e})"
    )]
    NonConvergence {
        estimate: f64,
        error_bound: f64,
        evaluations: usize,
    },

    /// The requested length is infinite.
    #[error("divergent length: {0}")]
    Divergent(String),

    /// A result that should be real came out with a significant imaginary part.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
