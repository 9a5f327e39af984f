use thiserror::Error;

use crate::closure::ClosureResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("background width {0} is outside the supported range 1..=6")]
    WidthOutOfRange(u8),
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: u8, right: u8 },
    #[error("expected {expected} images, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("image {value} at position {index} does not fit width {n}")]
    ImageOutOfRange { index: usize, value: u8, n: u8 },
    #[error("function is not a permutation")]
    NotAPermutation,
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("width {0} does not fit a 64-bit function code")]
    WidthOverflow(u8),
    #[error("function code {code:#x} has bits beyond width {n}")]
    CodeOutOfRange { code: u64, n: u8 },
    #[error("invalid reaction: {0}")]
    InvalidReaction(String),
    #[error("invalid point map: {0}")]
    InvalidPointMap(String),
    #[error("width {0} is too large for exhaustive enumeration")]
    UnsupportedWidth(u8),
    #[error("closure exceeded cap of {cap} members")]
    CapExceeded {
        cap: usize,
        partial: Box<ClosureResult>,
    },
    #[error("3-cycle coverage incomplete: {covered} of {target}")]
    CoverageIncomplete { covered: usize, target: usize },
    #[error("empty generator set")]
    NoGenerators,
    #[error("set file: {0}")]
    SetFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
