use thiserror::Error;

use crate::constellation::ValidationReport;
use crate::format::ParseError;
use crate::quiver::GentleReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid constellation: {0}")]
    InvalidConstellation(ValidationReport),

    #[error("operation requires a map; constellation is in hypermap mode")]
    HypermapMode,

    #[error("no edge with darts ({0},{1})")]
    UnknownEdge(usize, usize),

    #[error("slot {slot} is outside 1..={size}")]
    SlotOutOfRange { slot: usize, size: usize },

    #[error("quiver is not gentle: {0}")]
    NotGentle(GentleReport),

    #[error("inconsistent resolution data: {0}")]
    InconsistentData(String),

    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
