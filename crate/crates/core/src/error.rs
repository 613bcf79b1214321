use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} = {value} is outside {allowed}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },

    #[error("matrix is not unimodular: |det - 1| = {0:e}")]
    NotUnimodular(f64),

    #[error("matrix violates the Lorentz condition: residual {0:e}")]
    NotLorentz(f64),

    #[error("coherency matrix is not Hermitian: residual {0:e}")]
    NotHermitian(f64),

    #[error("at least one sample is required")]
    EmptySamples,

    #[error("unreachable: target {target} exceeds max {max}")]
    Unreachable { target: f64, max: f64 },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A chain-file or matrix-file syntax error, pinned to a 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError {
            line,
            reason: reason.into(),
        }
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
