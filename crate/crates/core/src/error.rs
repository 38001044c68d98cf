use thiserror::Error;

/// Errors shared by all evaluation layers. Every public function returns a
/// finite value or one of these; no silent NaN propagation.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series, continuation path, or quadrature failed to converge.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// The cone divisor violates a validity invariant.
    #[error("invalid divisor: {0}")]
    Divisor(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn convergence(msg: impl Into<String>) -> Self {
        Error::Convergence(msg.into())
    }

    pub(crate) fn divisor(msg: impl Into<String>) -> Self {
        Error::Divisor(msg.into())
    }
}
