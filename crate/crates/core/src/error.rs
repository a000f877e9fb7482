use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant coefficient {0} is not a unit integer")]
    NonUnitConstant(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("the empty partition has no Frobenius symbol")]
    EmptyPartition,

    #[error("invalid Frobenius symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid sign pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid poset partition: {0}")]
    InvalidPosetPartition(String),

    #[error("not in the image of the forward map: {0}")]
    NotInImage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
