use thiserror::Error;

/// Errors raised by evaluations in this crate.
///
/// The variants map one-to-one onto the CLI exit codes (see `beatty-cli`).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at input: {0}")]
    PoleAtInput(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("ambiguous at working precision: {0}")]
    Ambiguous(String),
    #[error("term budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("region unsupported: {0}")]
    RegionUnsupported(String),
    #[error("unsupported r: {0}")]
    UnsupportedR(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures caused by finite working precision rather than bad input.
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::PrecisionExhausted(_) | Error::Ambiguous(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
