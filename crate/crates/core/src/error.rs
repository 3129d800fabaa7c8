use thiserror::Error;

/// Errors produced while validating configurations or decoding values.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("action encoding {0} is out of range 0..=728")]
    EncodingOutOfRange(u32),

    #[error("invalid {field}: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("sweep axis `{0}` must not be empty")]
    EmptyAxis(&'static str),

    #[error("correlation group for invent rate {group} has {found} rows, needs at least {needed}")]
    TooFewRows {
        group: String,
        found: usize,
        needed: usize,
    },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
