use crate::set::Color;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("family has no lists")]
    EmptyFamily,

    #[error("list {index} is empty")]
    EmptyList { index: usize },

    #[error("duplicate color in list {index}")]
    DuplicateColor { index: usize },

    #[error("color {color} out of range for a universe of {universe} colors")]
    ColorOutOfRange { color: Color, universe: usize },

    #[error("universe of {count} colors exceeds the supported maximum of {max}")]
    TooManyColors { count: usize, max: usize },

    #[error("lists must share a common size; found sizes {found:?}")]
    MixedListSizes { found: Vec<usize> },

    #[error("family is not square: {m} lists require lists of size {expected}, found size {found}")]
    NotSquare { m: usize, expected: usize, found: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("edge has {found} members but the cover requires exactly {k}")]
    EdgeSizeMismatch { k: usize, found: usize },

    #[error("color {0} is not a representative of the weighted family")]
    UnknownRepresentative(Color),

    #[error("non-positive weight for color {0}")]
    NonPositiveWeight(Color),

    #[error("cover does not cover the quotient's minimal transversals")]
    InvalidCover,

    #[error("targets are not an antichain")]
    NotAntichain,

    #[error("structure outside greedy domain: a peeled track support fell below {required} members")]
    GreedyDomain { required: usize },

    #[error("oracle refused: {candidates} candidate edges exceed the cap of {cap}")]
    OracleCapExceeded { candidates: usize, cap: usize },

    #[error("cover value exceeds the solver's 128-bit working range")]
    ValueOverflow,

    #[error("solver timed out after {0} ms")]
    Timeout(u128),

    #[error("invalid family file: {0}")]
    InvalidFile(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
