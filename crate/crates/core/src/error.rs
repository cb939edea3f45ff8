use thiserror::Error;

use crate::cost::Cost;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// No degree sequence admits a finite-cost completion.
    #[error("instance is infeasible (best partial cost {lower_bound})")]
    Infeasible { lower_bound: Cost },

    /// Some supply cannot reach any demand over finite-cost pairs.
    #[error("degree completion has no finite-cost solution")]
    NoCompletion,

    #[error("refused: {0}")]
    Guard(String),

    #[error("line {line}: {field}: {message}")]
    Parse { line: usize, field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
