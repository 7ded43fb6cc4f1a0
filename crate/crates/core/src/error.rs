use thiserror::Error;

/// Errors raised by tournament construction, parsing and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows but row {row} has {len} entries")]
    NonSquare { rows: usize, row: usize, len: usize },

    #[error("bad character {ch:?} at line {line}, column {column}")]
    BadChar { line: usize, column: usize, ch: char },

    #[error("not a tournament matrix: {0}")]
    NotTournament(String),

    #[error("order {n} out of range ({min}..={max})")]
    OrderOutOfRange { n: usize, min: usize, max: usize },

    #[error("order {n} exceeds the supported ceiling {max} for this operation")]
    OrderTooLarge { n: usize, max: usize },

    #[error("a regular tournament needs odd order, got {0}")]
    EvenOrder(usize),

    #[error("an almost regular tournament needs even order, got {0}")]
    OddOrder(usize),

    #[error("vertex {0} used twice")]
    SameVertex(usize),

    #[error("vertex {0} out of range for order {1}")]
    NoSuchVertex(usize, usize),

    #[error("no arc {from} -> {to}")]
    NoSuchArc { from: usize, to: usize },

    #[error("code has wrong length: {0}")]
    BadLength(String),

    #[error("malformed code: {0}")]
    BadHex(String),

    #[error("empty vertex set")]
    EmptySet,

    #[error("decomposition does not match tournament: {0}")]
    DecompositionMismatch(String),

    #[error("tournament is not singular")]
    NotSingular,

    #[error("tournament has {found} 3-cycles, expected the maximum {expected}")]
    NotMaximizer { found: u64, expected: u64 },

    #[error("maximizer with a singleton component does not fit the trivial shape: {0}")]
    UnexpectedMaximizerShape(String),

    #[error("arithmetic overflow in exact determinant")]
    Overflow,

    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
