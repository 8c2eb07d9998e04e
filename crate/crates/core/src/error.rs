use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),

    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("strand count must be at least 2, got {0}")]
    TooFewStrands(usize),

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("no image given for generator {0}")]
    MissingImage(String),

    #[error("word is not in the kernel of {map}: image is {image}")]
    NotInKernel { map: &'static str, image: String },

    #[error("expected {expected} alphabet, found {found}")]
    WrongAlphabet {
        expected: &'static str,
        found: &'static str,
    },

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("operation requires n = {expected}, got {got}")]
    WrongStrandCount { expected: usize, got: usize },

    #[error("malformed formal combination: {0}")]
    MalformedCombination(String),

    #[error("cache file: {0}")]
    Cache(String),
}
