use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series could not be certified within the iteration cap.
    #[error(
        "could not certify tail after {terms} terms (last tail bound {})",
        crate::certified::format_error_bound(last_bound)
    )]
    Convergence { terms: usize, last_bound: Rational },

    #[error("incompatible series: {0}")]
    IncompatibleSeries(String),

    /// A ψ-sequence vanished (or was missing) at a positive index.
    #[error("singular sequence `{name}` at index {index}")]
    SingularSequence { name: String, index: usize },

    #[error("missing value for index {index} in sequence `{name}`")]
    MissingIndex { name: String, index: usize },

    #[error("refusing to enumerate partitions of a {n}-set: cap is {cap} (raise it explicitly to override)")]
    EnumerationCap { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
