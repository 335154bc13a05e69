use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("word contains ψ; auxiliary words are never admissible")]
    AuxiliaryWord,

    #[error("word is over the prime {found}, expected {expected}")]
    PrimeMismatch { expected: u64, found: u64 },

    #[error("degree {requested} exceeds the truncation cap {cap}")]
    BeyondTruncation { requested: usize, cap: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("boundary composite d_{degree}∘d_{} is nonzero", degree + 1)]
    NotAComplex { degree: usize },
}
