use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(
        "invalid letter {found:?} at position {position}: expected a digit below {alphabet_size}"
    )]
    InvalidLetter {
        found: char,
        position: usize,
        alphabet_size: u8,
    },
    #[error("alphabet size must be between 1 and 10, got {0}")]
    InvalidAlphabet(usize),
    #[error("{0} is undefined for the empty word")]
    EmptyWord(&'static str),
    #[error("word {0} is not rich")]
    NotRich(String),
    #[error("word {0} is unary; a non-unary word is required")]
    Unary(String),
    #[error("word {0} is not over the binary alphabet {{0,1}}")]
    NotBinary(String),
    #[error("word {0} is not balanced")]
    Unbalanced(String),
    #[error("pattern {pattern:?} does not occur in {word}")]
    PatternAbsent { word: String, pattern: String },
    #[error("empty pattern")]
    EmptyPattern,
    #[error("request exceeds budget: estimated {estimate} nodes, budget {budget}")]
    BudgetExceeded { estimate: u64, budget: u64 },
    #[error("{what} = {value} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid rejected: {0}")]
    GridRejected(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
