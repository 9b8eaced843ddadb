use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("closure exceeded cap of {cap} elements ({partial} found so far)")]
    CapExceeded { cap: usize, partial: usize },
    #[error("allowed set is not closed under complement: {0} present but {1} absent")]
    NotComplementClosed(usize, usize),
    #[error("part of length {t} violates the extension bound (max {max})")]
    ExtensionBound { t: usize, max: i64 },
    #[error("{0} is not a proper divisor of {1}")]
    InvalidDivisor(usize, usize),
    #[error("no complete primitive catalog for degree {0}; exact mode supports 3..=13, 17 and 19")]
    CatalogAbsent(usize),
    #[error("odd permutation has no alternating split label")]
    OddPermutation,
    #[error("{0}")]
    Inadmissible(String),
    #[error("generator file line {line}: {msg}")]
    DataFile { line: usize, msg: String },
    #[error("fingerprint cache: {0}")]
    Cache(String),
    #[error("group {name}: {msg}")]
    GroupCheck { name: String, msg: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
