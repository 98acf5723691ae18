use thiserror::Error;

use crate::moments::MomentIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("{0} is not an odd prime below 2^62")]
    NotPrime(u64),

    #[error("partition of length {len} does not fit in {n} coordinates")]
    PartitionTooLong { len: usize, n: usize },

    #[error("moment index {0} is not in the index set of the variety")]
    IndexOutOfStratum(MomentIndex),

    #[error("degree {d} is out of range for n = {n}")]
    DegreeOutOfRange { n: usize, d: usize },

    #[error("binomial is not in the toric ideal")]
    NotInIdeal,

    #[error("no perfect matching found while lifting a binomial (this is a bug)")]
    MatchingFailure,

    #[error("degree {degree} has {count} monomials, above the fiber cap {cap}")]
    FiberCapExceeded {
        degree: usize,
        count: u128,
        cap: u128,
    },

    #[error("d = {0} needs more than 2^20 subset constraints")]
    TooManySubsets(usize),

    #[error("dual certificate failed: {0}")]
    CertificateFailure(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("labels must be distinct and inside the ambient coordinates")]
    DuplicateLabels,

    #[error("parse error on line {line}: {message}")]
    ParseError { line: u64, message: String },

    #[error("row on line {line} has {found} fields, expected {expected}")]
    RaggedRows {
        line: u64,
        expected: usize,
        found: usize,
    },

    #[error("moment {0} is required but not available in the moment scope")]
    ScopeMismatch(MomentIndex),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
