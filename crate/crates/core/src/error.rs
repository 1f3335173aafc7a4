use thiserror::Error;

use crate::topology::TopologyViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Unknown element, point out of range, malformed argument.
    #[error("input error: {0}")]
    Input(String),

    /// The request exceeds an exhaustive-regime size bound.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// A candidate lattice, quantale table or space failed structural validation.
    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("not a topology: {0}")]
    Topology(#[from] TopologyViolation),

    /// Two Ω(τ) values built over families of different widths.
    #[error("mismatched underlying topology: {left} opens vs {right} opens")]
    Mismatch { left: usize, right: usize },

    #[error("not metrizable: failed {}", .failed.join(", "))]
    NotMetrizable { failed: Vec<&'static str> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn capacity(msg: impl Into<String>) -> Error {
    Error::Capacity(msg.into())
}
