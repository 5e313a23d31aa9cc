use thiserror::Error;

use crate::ordinal::OrdinalError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must have at least 2 symbols, got {0}")]
    InvalidAlphabet(usize),
    #[error("alphabet mismatch: {left} vs {right} symbols")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("symbol {symbol} out of range for alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid word literal `{0}`")]
    InvalidWord(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error("set is not guessable: the stable remainder is nonempty")]
    NotGuessable,
    #[error("open chain is not increasing at index {0}")]
    ChainNotIncreasing(usize),
    #[error("invalid open chain: {0}")]
    InvalidChain(String),
    #[error("mind-change bound violated: {0}")]
    BoundViolation(String),
    #[error("guesser outputs 1 at the empty word; use the complement")]
    RootNotZero,
    #[error("codomain {0} is unsupported here (needs a finite successor greater than 1)")]
    InvalidCodomain(String),
    #[error("oracle family does not yield an eventually periodic stream")]
    NotEventuallyPeriodic,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("cannot read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
