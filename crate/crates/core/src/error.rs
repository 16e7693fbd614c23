use thiserror::Error;

use crate::fusion::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fusion ring fails validation:\n{0}")]
    InvalidRing(ValidationReport),

    #[error("invalid character table: {0}")]
    InvalidTable(String),

    #[error("fusion coefficient N[{i}][{j}][{k}] = {value} is not a non-negative integer")]
    NonIntegralCoefficient { i: usize, j: usize, k: usize, value: f64 },

    #[error("invalid class data: {0}")]
    InvalidClassData(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("missing structure: {0}")]
    MissingStructure(&'static str),

    #[error("singular matrix: {0}")]
    Singular(&'static str),

    #[error("expected a vector in the {expected} basis")]
    WrongBasis { expected: &'static str },

    #[error("resource cap exceeded: {what} {found} > {cap}")]
    CapExceeded { what: &'static str, found: usize, cap: usize },

    #[error("character table does not match the group: {0}")]
    TableMismatch(String),

    #[error("contract violated: {0}")]
    ContractViolated(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),
}
