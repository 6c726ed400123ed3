use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("refused above desk scale: {0}")]
    Scale(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("drawing is not realizable: {0}")]
    NotRealizable(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
