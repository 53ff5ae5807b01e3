use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input contains the sentinel byte 0x00 at offset {offset}")]
    InteriorSentinel { offset: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("symbol {symbol} out of range (alphabet size {sigma})")]
    SymbolOutOfRange { symbol: usize, sigma: usize },

    #[error("invalid interval [{start}, {end}) for length {len}")]
    InvalidInterval { start: usize, end: usize, len: usize },

    #[error("order {k} out of range 1..={max}")]
    OrderOutOfRange { k: usize, max: usize },

    #[error("input length {len} exceeds the reference cap of {cap}")]
    InputTooLarge { len: usize, cap: usize },

    #[error("boundary bitvector is not a valid node partition: {0}")]
    InvalidBoundaries(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("corrupt tunneled BWT: {0}")]
    Corrupt(String),

    #[error("prefix interval validation failed:\n{}", .0.join("\n"))]
    PrefixIntervals(Vec<String>),
}
