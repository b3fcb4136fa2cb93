//! Shared error type for the numeric layers of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix or vector shapes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Paired-sample operations need equal sample counts unless truncation
    /// was requested.
    #[error("sample sizes differ ({n_x} vs {n_y}); truncate or resample first")]
    UnequalSampleSizes { n_x: usize, n_y: usize },

    /// The covariance solve failed even after ridge escalation.
    #[error("matrix numerically singular (final ridge tried: {ridge:e})")]
    SingularMatrix { ridge: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
