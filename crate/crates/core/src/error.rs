use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable count {n} outside the supported range 1..={max}")]
    VariableCount { n: u32, max: u32 },

    #[error("rank {rank} out of range for n = {n} (must be below 3^{n})")]
    RankOutOfRange { rank: u64, n: u32 },

    #[error("invalid ternary symbol {symbol:?} at position {position}")]
    InvalidSymbol { symbol: char, position: usize },

    #[error("packed word {bits:#x} is not a valid {n}-variable implicant")]
    InvalidPacked { bits: u64, n: u32 },

    #[error("bottom-layer dimension h = {h} invalid for n = {n} (need 1 <= h <= min(n, {max}))")]
    LayerSplit { h: u32, n: u32, max: u32 },

    #[error("dense state needs {required} bytes, cap is {cap} bytes")]
    MemoryCap { required: u64, cap: u64 },

    #[error("allocation of {bytes} bytes failed")]
    Allocation { bytes: u64 },

    #[error("brute-force reference limited to n <= {max}, got n = {n}")]
    OracleTooLarge { n: u32, max: u32 },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("density {0} outside [0, 1]")]
    Density(f64),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// True for failures caused by memory limits rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::MemoryCap { .. } | Error::Allocation { .. } | Error::OracleTooLarge { .. }
        )
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
