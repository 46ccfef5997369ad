use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller passed arguments that violate an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// A computed object failed one of its built-in self-checks.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    /// The request is valid but lies outside the supported size envelope.
    #[error("outside supported envelope: {0}")]
    Envelope(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
