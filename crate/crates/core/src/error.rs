use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("alphabet mismatch: expected size {expected}, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    /// `position` is 1-based.
    #[error("symbol {symbol:?} at position {position} is not in an alphabet of size {size}")]
    SymbolOutOfRange {
        position: usize,
        symbol: String,
        size: usize,
    },

    #[error("operation requires a binary alphabet, found size {0}")]
    NotBinary(usize),

    #[error("subset must not be empty")]
    EmptySubset,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what} needs {required} evaluations, budget allows {limit}")]
    Budget {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    /// `block` is 1-based.
    #[error("non-canonical center: block {block} is {pattern}")]
    NonCanonicalCenter { block: usize, pattern: String },

    #[error("oracle contract violated: {0}")]
    ContractViolation(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
