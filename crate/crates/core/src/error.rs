use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computation would exceed a configured budget (state count, digits, step watchdog).
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An observed orbit contradicts a proven property of the map.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    /// A verifier was asked to check a theorem whose hypothesis does not hold.
    #[error("theorem hypothesis not satisfied: {0}")]
    HypothesisViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
