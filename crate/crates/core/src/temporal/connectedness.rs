use crate::error::{Error, Result};
use crate::temporal::track::TrackedRegion;
use crate::topology::{is_connected, subimages_adjacent, AdjacencyScheme};

fn connected_on(e: &TrackedRegion, lo: usize, hi: usize, scheme: AdjacencyScheme) -> Result<bool> {
    for t in lo..=hi {
        let slice = e.slice(t).filter(|s| !s.is_empty()).ok_or(Error::NotFullSpan(e.id(), t))?;
        if !is_connected(slice, scheme)? {
            return Ok(false);
        }
        if t > lo {
            let prev = e.slice(t - 1).expect("checked on the previous step");
            if !subimages_adjacent(prev, slice, scheme)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every slice is κ-connected and consecutive slices are adjacent, over the
/// whole video.
pub fn video_frame_connected(e: &TrackedRegion, scheme: AdjacencyScheme) -> Result<bool> {
    if e.frames() == 0 {
        return Err(Error::NeverPresent(e.id()));
    }
    connected_on(e, 0, e.frames() - 1, scheme)
}

/// The largest `t'` such that `e` is video-frame connected on
/// `[birth, t']` and absent from every later frame.
///
/// The interval starts at the region's first appearance. Absence after `t'`
/// forces `t' >= death`, and connectedness on `[birth, t']` forces presence,
/// so the only candidate is `death`.
pub fn temporally_video_frame_connected(e: &TrackedRegion, scheme: AdjacencyScheme) -> Option<usize> {
    let (birth, death) = (e.birth()?, e.death()?);
    connected_on(e, birth, death, scheme)
        .ok()
        .filter(|&c| c)
        .map(|_| death)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Extent;
    use crate::lattice::Point;
    use crate::region::Region;

    const E: Extent = Extent::new(16, 16);

    fn blob(x: i32, y: i32) -> Region {
        Region::new(E, [Point::new(x, y), Point::new(x + 1, y), Point::new(x, y + 1)]).unwrap()
    }

    fn track(slices: Vec<Region>) -> TrackedRegion {
        TrackedRegion::new(4, slices).unwrap()
    }

    #[test]
    fn static_blob_is_connected() {
        let e = track(vec![blob(2, 2); 5]);
        assert!(video_frame_connected(&e, AdjacencyScheme::Four).unwrap());
        assert_eq!(temporally_video_frame_connected(&e, AdjacencyScheme::Four), Some(4));
    }

    #[test]
    fn jumping_blob_is_not() {
        let e = track(vec![blob(2, 2), blob(7, 2), blob(12, 2)]);
        assert!(!video_frame_connected(&e, AdjacencyScheme::Eight).unwrap());
    }

    #[test]
    fn splitting_blob_is_not() {
        let split = blob(2, 2).union(&blob(9, 9));
        let e = track(vec![blob(2, 2), split, blob(2, 2)]);
        assert!(!video_frame_connected(&e, AdjacencyScheme::Eight).unwrap());
    }

    #[test]
    fn partial_span_errors() {
        let e = track(vec![blob(2, 2), Region::empty(E)]);
        assert_eq!(video_frame_connected(&e, AdjacencyScheme::Four), Err(Error::NotFullSpan(4, 1)));
    }

    #[test]
    fn disappearance_after_t_prime() {
        let mut slices = vec![blob(1, 1), blob(2, 1), blob(3, 1)];
        slices.extend(vec![Region::empty(E); 3]);
        assert_eq!(temporally_video_frame_connected(&track(slices), AdjacencyScheme::Four), Some(2));
    }

    #[test]
    fn reappearance_is_rejected() {
        let e = Region::empty(E);
        let slices = vec![blob(1, 1), blob(1, 1), e.clone(), blob(1, 1), e.clone(), e];
        assert_eq!(temporally_video_frame_connected(&track(slices), AdjacencyScheme::Four), None);
    }
}
