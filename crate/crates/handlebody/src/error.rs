use thiserror::Error;

/// Failures surfaced by the library.
///
/// `Precondition` carries a stable upper-case code (for example
/// `F_NOT_IN_H_K`) that front ends can match on.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{code}: {detail}")]
    Precondition { code: &'static str, detail: String },
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

pub(crate) fn precondition<T>(code: &'static str, detail: impl Into<String>) -> Result<T> {
    Err(Error::Precondition {
        code,
        detail: detail.into(),
    })
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}

impl Error {
    /// Stable short code: the precondition code, or `PARSE` / `INTERNAL`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE",
            Error::Precondition { code, .. } => code,
            Error::Internal(_) => "INTERNAL",
        }
    }
}
