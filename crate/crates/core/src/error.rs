use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("text must be nonempty")]
    EmptyText,
    #[error("text length {0} exceeds the supported maximum {max}", max = crate::text_index::MAX_TEXT_LEN)]
    TextTooLong(usize),
    #[error("position {pos} out of range for text of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("interval [{lo}..{hi}] is not a valid subinterval of [0..{len})")]
    InvalidInterval { lo: usize, hi: usize, len: usize },
    #[error("staircase step must be at least 1")]
    ZeroStep,
    #[error("node id {0} out of range")]
    UnknownNode(usize),
    #[error("range [{lo}, {hi}] must satisfy 1 <= low <= high")]
    InvalidRange { lo: usize, hi: usize },
}
