use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("letter {letter} occurs {count} time(s); every letter must occur exactly twice")]
    NonGauss { letter: String, count: usize },

    #[error("letter {letter} has no symbol declaration")]
    UndeclaredLetter { letter: String },

    #[error("symbol {symbol} is not in the alphabet")]
    UnknownSymbol { symbol: String },

    #[error("index {index} out of range for {len} item(s)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid homotopy data triple: {0}")]
    InvalidTriple(String),

    #[error("the unit triple carries no homotopy")]
    UnitTriple,

    #[error("the triple is prime; there is nothing to decompose")]
    PrimeTriple,

    #[error("move does not match the phrase: {0}")]
    StaleSite(String),

    #[error("invalid decomposed phrase: {0}")]
    InvalidDecomposition(String),

    #[error("side condition violated: {0}")]
    SideConditionViolated(String),

    #[error("component {index} is not empty")]
    ComponentNotEmpty { index: usize },

    #[error("operation needs an empty S")]
    SNotEmpty,

    #[error("operation needs a diagonal S")]
    NotDiagonal,

    #[error("support vector outside the single-row subset: {0}")]
    MalformedSupport(String),

    #[error("refusing max rank {max_rank} without force (limit {limit})")]
    BudgetRefused { max_rank: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
