use thiserror::Error;

use crate::rational::ParseRationalError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("element {element} is not in the algebra ({reason})")]
    NotInAlgebra { element: String, reason: String },
    #[error("invalid unit: {0}")]
    InvalidUnit(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("unsupported carrier: {0}")]
    Unsupported(String),
    #[error("enumeration bound exceeded: {size} elements > bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("ideal is not normal: {0}")]
    NotNormal(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("square root precondition failed: {0}")]
    Precondition(String),
    #[error("not a square root: {0}")]
    NotASquareRoot(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Rational(#[from] ParseRationalError),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
