use thiserror::Error;

/// Errors raised by the library. Absence of a result (no conjugator found,
/// infeasible constraints) is reported as a value, not as an error.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("a book needs at least 3 pages, got {0}")]
    TooFewPages(usize),
    #[error("page count mismatch: expected {expected}, got {got}")]
    PageCountMismatch { expected: usize, got: usize },
    #[error("invalid page: {0}")]
    InvalidPage(String),
    #[error("page index {index} out of range 1..={n}")]
    PageIndex { index: usize, n: usize },
    #[error("not a permutation of 1..={n}: {detail}")]
    NotAPermutation { n: usize, detail: String },
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("generator out of range: {0}")]
    GeneratorRange(String),
    #[error("automorphism is unsound: {0}")]
    UnsoundAutomorphism(String),
    #[error("inverse not found within budget {0}")]
    InverseNotFound(usize),
    #[error("insufficient verdict coverage: {0}")]
    InsufficientCoverage(String),
    #[error("contradictory constraints: {0}")]
    ContradictoryConstraints(String),
    #[error("no rectification found: {0}")]
    NoRectification(String),
    #[error("invalid arc system: {0}")]
    InvalidArcSystem(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("degenerate representation after {0} attempts")]
    DegenerateRepresentation(usize),
    #[error("invalid pants decomposition: {0}")]
    InvalidPants(String),
    #[error("sequence too short: {got} terms, need at least {need}")]
    SequenceTooShort { got: usize, need: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
