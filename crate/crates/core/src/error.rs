use thiserror::Error;

use crate::lattice::Point;

/// Errors raised by the lattice, topology and temporal operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position {0} lies outside the {1}x{2} frame extent")]
    OutOfExtent(Point, u32, u32),
    #[error("subimage is empty")]
    EmptySubimage,
    #[error("regions have different frame extents")]
    ExtentMismatch,
    #[error("map is undefined at {0}")]
    PartialMap(Point),
    #[error("not a 1-cycle: {0}")]
    NotACycle(String),
    #[error("1-cycle has an empty interior")]
    DegenerateCycle,
    #[error("frame {0} is the last frame; it has no successor to segment against")]
    LastFrame(usize),
    #[error("tracked region {0} is never present")]
    NeverPresent(u32),
    #[error("tracked region {0} is absent from frame {1}")]
    NotFullSpan(u32, usize),
    #[error("value bins {0} and {1} overlap")]
    OverlappingBins(String, String),
    #[error("invalid value bin: {0}")]
    InvalidBin(String),
    #[error("frame index {0} is out of range for a video of {1} frames")]
    FrameIndex(usize, usize),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("invalid video: {0}")]
    InvalidVideo(String),
}

pub type Result<T> = std::result::Result<T, Error>;
