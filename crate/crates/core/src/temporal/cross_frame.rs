//! Adjacency between voxels, frames and subimages taken from different frames.

use crate::error::{Error, Result};
use crate::frame::{Frame, Video};
use crate::lattice::Point;
use crate::region::Region;

/// A lattice position at a frame index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Voxel {
    pub point: Point,
    pub t: usize,
}

impl Voxel {
    pub fn new(x: i32, y: i32, t: usize) -> Self {
        Voxel {
            point: Point::new(x, y),
            t,
        }
    }
}

/// Same location in two different frames.
pub fn point_across_adjacent(v: Voxel, w: Voxel) -> bool {
    v.point == w.point && v.t != w.t
}

/// Levels of the two voxels agree within `tol`.
pub fn voxel_value_adjacent(video: &Video, v: Voxel, w: Voxel, tol: u8) -> Result<bool> {
    let a = video.frame(v.t)?.value_at(v.point)?;
    let b = video.frame(w.t)?.value_at(w.point)?;
    Ok(a.level().abs_diff(b.level()) <= tol)
}

/// Levels within `tol` of any level in `levels`.
fn reachable_levels(levels: impl Iterator<Item = u8>, tol: u8) -> [bool; 256] {
    let mut present = [false; 256];
    for l in levels {
        let lo = l.saturating_sub(tol) as usize;
        let hi = l.saturating_add(tol) as usize;
        present[lo..=hi].iter_mut().for_each(|p| *p = true);
    }
    present
}

/// The two frames share at least one level, up to `tol`.
pub fn frame_value_adjacent(a: &Frame, b: &Frame, tol: u8) -> bool {
    let reach = reachable_levels(a.levels().iter().copied(), tol);
    b.levels().iter().any(|&l| reach[l as usize])
}

/// Some voxel of `region_a` in `frame_a` and some voxel of `region_b` in
/// `frame_b` carry levels within `tol`.
pub fn location_value_adjacent(
    frame_a: &Frame,
    region_a: &Region,
    frame_b: &Frame,
    region_b: &Region,
    tol: u8,
) -> Result<bool> {
    let mut levels_a = Vec::with_capacity(region_a.len());
    for p in region_a.iter() {
        levels_a.push(frame_a.value_at(p)?.level());
    }
    let reach = reachable_levels(levels_a.into_iter(), tol);
    for p in region_b.iter() {
        if reach[frame_b.value_at(p)?.level() as usize] {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A cross-frame adjacency query against one video.
#[derive(Debug, Clone, Copy)]
pub enum CrossFrameQuery<'a> {
    PointAcross(Voxel, Voxel),
    VoxelValue { v: Voxel, w: Voxel, tol: u8 },
    FrameValue { a: usize, b: usize, tol: u8 },
    LocationValue { a: (usize, &'a Region), b: (usize, &'a Region), tol: u8 },
}

pub fn cross_frame_adjacent(video: &Video, query: CrossFrameQuery<'_>) -> Result<bool> {
    match query {
        CrossFrameQuery::PointAcross(v, w) => {
            for x in [v, w] {
                video.frame(x.t)?.value_at(x.point)?;
            }
            Ok(point_across_adjacent(v, w))
        }
        CrossFrameQuery::VoxelValue { v, w, tol } => voxel_value_adjacent(video, v, w, tol),
        CrossFrameQuery::FrameValue { a, b, tol } => {
            Ok(frame_value_adjacent(video.frame(a)?, video.frame(b)?, tol))
        }
        CrossFrameQuery::LocationValue { a, b, tol } => {
            if a.1.extent() != video.extent() || b.1.extent() != video.extent() {
                return Err(Error::ExtentMismatch);
            }
            location_value_adjacent(video.frame(a.0)?, a.1, video.frame(b.0)?, b.1, tol)
        }
    }
}
