use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the simulator and its tooling.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid width {width}: must be within 1..={max}")]
    InvalidWidth { width: u32, max: u32 },

    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: u32, right: u32 },

    #[error("bit index {index} out of range for width {width}")]
    BitIndexOutOfRange { index: u32, width: u32 },

    #[error("value {value:#x} does not fit in {width} bits")]
    ValueTooWide { value: u64, width: u32 },

    #[error("ring state {value:#b} is not one-hot")]
    NotOneHot { value: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("comparison undefined: baseline energy is zero")]
    ZeroBaseline,

    #[error("exhaustive enumeration refused for width {width} (limit {limit})")]
    ExhaustiveTooWide { width: u32, limit: u32 },

    #[error("power model {path}:{line}: {msg}")]
    ModelParse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("report serialization failed: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, SimError>;
