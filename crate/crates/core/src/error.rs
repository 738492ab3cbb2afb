use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {partition} has no part equal to {part}")]
    MissingPart { partition: String, part: usize },

    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),

    #[error("cycle {cycle} of beta is split across blocks {first} and {second}")]
    NotCoarser {
        cycle: String,
        first: usize,
        second: usize,
    },

    #[error("map is not a star map: alpha = {alpha} is not a long cycle")]
    NotStar { alpha: String },

    #[error("invalid thorn tree: {0}")]
    InvalidTree(String),

    #[error("tree does not have property (P1): leftmost white slot is a thorn")]
    NoP1,

    #[error("invalid coordinates: {0}")]
    InvalidCoordinates(String),

    #[error("n = {n} exceeds the enumeration budget of {limit}")]
    BudgetExceeded { n: usize, limit: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("basis mismatch: expected {expected}, got {actual}")]
    BasisMismatch {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
