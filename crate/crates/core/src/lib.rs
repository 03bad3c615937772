//! Temporal digital topology over grayscale video frames.
//!
//! Frames are total maps from an integer lattice to 8-bit levels. On top of
//! them this crate provides voxel and subimage adjacency, connectedness,
//! κ-continuity, Jordan partitions of simple closed curves, derivative-based
//! foreground segmentation, region tracking, temporal proximities and
//! value-class persistence intervals.

pub mod error;
pub mod frame;
pub mod jordan;
pub mod lattice;
pub mod region;
pub mod temporal;
pub mod topology;

pub use error::{Error, Result};
pub use frame::{Axis, Extent, Frame, GrayValue, TimeStamp, Video};
pub use jordan::{jordan_partition, JordanPartition, OneCycle};
pub use lattice::{boundary_corners, voxels_adjacent, HalfPoint, Point, VoxelAdjacency};
pub use region::Region;
pub use topology::{
    cat_number, check_kappa_continuity, connected_components, is_connected, map_region,
    near_discrete, subimages_adjacent, AdjacencyScheme, CatCover, ContinuityVerdict,
};
