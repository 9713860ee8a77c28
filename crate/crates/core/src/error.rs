use thiserror::Error;

/// Errors raised by the library. Budget and cap errors are ordinary outcomes
/// at this scale: they mean "too large to check here", never "false".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("{u} is not a unit modulo {n}")]
    NotCoprime { u: i64, n: u64 },

    #[error("permutation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("group closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator is not an element of the ambient group")]
    NotInGroup,
    #[error("no unit of multiplicative order {p} modulo {n}")]
    NoSuchUnit { n: u64, p: u64 },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("vertex ({i}, {j}) out of range for a {a}x{b} bipartite graph")]
    OutOfRange { i: usize, j: usize, a: usize, b: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("graph too large for this operation: {0}")]
    TooLarge(String),

    #[error("automorphism search exceeded budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },

    #[error("divisibility requirement violated: {0}")]
    DivisibilityViolated(String),
    #[error("field order {0} is not prime")]
    NonPrimeField(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
