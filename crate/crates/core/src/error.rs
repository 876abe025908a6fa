use std::fmt;

use thiserror::Error;

/// First structural defect found in a candidate packing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackingViolation {
    DuplicatedVertex(usize),
    MissingVertex(usize),
    VertexOutOfRange(usize),
    WrongLength { block: usize, len: usize, k: usize },
    WrongBlockCount { found: usize, expected: usize },
    NotDivisible { n: usize, k: usize },
    CycleTooShort(usize),
}

impl fmt::Display for PackingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicatedVertex(v) => write!(f, "duplicated vertex {v}"),
            Self::MissingVertex(v) => write!(f, "missing vertex {v}"),
            Self::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Self::WrongLength { block, len, k } => {
                write!(f, "wrong length: block {block} has {len} vertices, expected {k}")
            }
            Self::WrongBlockCount { found, expected } => {
                write!(f, "wrong block count: {found} blocks, expected {expected}")
            }
            Self::NotDivisible { n, k } => write!(f, "n = {n} is not divisible by k = {k}"),
            Self::CycleTooShort(k) => write!(f, "cycles need at least 3 vertices, got k = {k}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed instance (line {line}): {message}")]
    Parse { line: usize, message: String },

    #[error("weight table is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),

    #[error("negative weight at ({0}, {1})")]
    NegativeWeight(usize, usize),

    #[error("expected {expected} weight entries, found {found}")]
    EntryCount { expected: usize, found: usize },

    #[error("n not divisible by k (n = {n}, k = {k})")]
    NotDivisible { n: usize, k: usize },

    #[error("unsupported k = {k}: {reason}")]
    UnsupportedK { k: usize, reason: &'static str },

    #[error("invalid packing: {0}")]
    InvalidPacking(PackingViolation),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("{what} is capped at {cap}, instance needs {size}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("a perfect matching needs an even vertex count, got n = {0}")]
    OddVertexCount(usize),

    #[error("no matching of size {p} on {n} vertices")]
    MatchingTooLarge { p: usize, n: usize },

    #[error("weight class violation: {0}")]
    WeightClass(String),

    #[error("edge-group plan inconsistent with the matching: {0}")]
    InconsistentPlan(String),

    #[error("unsupported request: {0}")]
    Unsupported(String),
}

impl From<PackingViolation> for Error {
    fn from(v: PackingViolation) -> Self {
        Error::InvalidPacking(v)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
