use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring variant mismatch: {0} vs {1}")]
    RingMismatch(&'static str, &'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
