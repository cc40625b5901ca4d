use thiserror::Error;

/// Errors shared by all engine modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("transposition indices must differ (both are {0})")]
    DegenerateTransposition(usize),

    #[error("{map:?} is not a bijection on 0..{size}")]
    NotABijection { size: usize, map: Vec<usize> },

    #[error("state space of {required} states exceeds the enumeration bound of {bound}")]
    EnumerationBound { required: u128, bound: u128 },

    #[error("state vector not normalized: sum |amp|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("value {value} outside the admissible range -{m}..={m}")]
    ValueOutOfRange { value: i64, m: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("trace format: {0}")]
    TraceFormat(String),

    #[error("trace of {steps} steps is not aligned to whole cycles of {cycle} steps")]
    NotCycleAligned { cycle: usize, steps: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
