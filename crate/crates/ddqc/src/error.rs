use thiserror::Error;

/// Errors produced by graph ingestion, feature extraction, generation,
/// and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed input data, reported with its 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A parameter is outside the accepted range for its model or command.
    #[error("invalid parameter: {0}")]
    Param(String),

    /// The input violates an operation's precondition (empty graph, no edges).
    #[error("{0}")]
    Domain(String),

    /// A statistic is undefined for this input (zero variance, zero spread).
    #[error("undefined: {0}")]
    Undefined(String),

    /// Model fitting failed.
    #[error("fit failed: {0}")]
    Fit(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
