use crate::error::{Error, Result};
use crate::frame::Video;
use crate::region::Region;

/// Foreground/background split of frame `t` against frame `t + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationMask {
    pub t: usize,
    pub foreground: Region,
    pub background: Region,
}

/// Classifies every voxel of frame `t` by comparing its partial derivatives
/// with those of frame `t + 1`.
///
/// A voxel is background when both the x- and y-derivative change by at most
/// `tol` quantized units. Voxels on the last row or column have no forward
/// difference and are background.
pub fn segment(video: &Video, t: usize, tol: u16) -> Result<SegmentationMask> {
    let now = video.frame(t)?.levels();
    let next = video.frame(t + 1).map_err(|_| Error::LastFrame(t))?.levels();
    let extent = video.extent();
    let (w, h) = (extent.width as usize, extent.height as usize);
    let tol = i32::from(tol);
    // Change of the forward difference from cell `i` to cell `j`.
    let delta = |i: usize, j: usize| {
        let a = i32::from(now[j]) - i32::from(now[i]);
        let b = i32::from(next[j]) - i32::from(next[i]);
        (a - b).abs()
    };
    let mut mask = vec![false; extent.area()];
    for y in 0..h.saturating_sub(1) {
        for x in 0..w - 1 {
            let i = y * w + x;
            mask[i] = delta(i, i + 1) > tol || delta(i, i + w) > tol;
        }
    }
    let foreground = Region::from_mask(extent, &mask)?;
    mask.iter_mut().for_each(|m| *m = !*m);
    let background = Region::from_mask(extent, &mask)?;
    Ok(SegmentationMask {
        t,
        foreground,
        background,
    })
}

/// Masks for every frame that has a successor.
pub fn segment_all(video: &Video, tol: u16) -> Result<Vec<SegmentationMask>> {
    (0..video.len().saturating_sub(1))
        .map(|t| segment(video, t, tol))
        .collect()
}
