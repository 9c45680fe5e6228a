use thiserror::Error;

/// Errors reported by the library.
///
/// Infeasibility of a checked instance is never an error; every check
/// returns a verdict with a witness or a certificate instead.
#[derive(Debug, Error)]
pub enum Error {
    /// Arguments violate an operation's contract (out-of-range vertex,
    /// g > f somewhere, invalid construction parameters, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The instance exceeds an enumeration cutoff and no override was given.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Malformed input text (graph or prescription file).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A sharpness construction failed one of its verification clauses.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
