use crate::error::{Error, Result};
use crate::frame::{Extent, Video};
use crate::lattice::Point;
use crate::temporal::connectedness::temporally_video_frame_connected;
use crate::temporal::proximity::{temporally_adjacent, temporally_metric_near, temporally_near};
use crate::temporal::track::TrackedRegion;
use crate::topology::{map_region, AdjacencyScheme, ContinuityVerdict};

/// A pair of tracks whose temporal adjacency on `times` is not carried over
/// by the map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackPairWitness {
    pub a: u32,
    pub b: u32,
    pub times: Vec<usize>,
}

/// Tolerances at which preservation of `mnear` is reported.
pub const MNEAR_CLAUSE_EPS: [f64; 2] = [0.0, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct TemporalContinuityReport {
    /// Temporally adjacent tracks map to temporally adjacent tracks.
    pub continuity: ContinuityVerdict<TrackPairWitness>,
    /// `A tnear B` implies `f(A) tnear f(B)`.
    pub tnear_preserved: ContinuityVerdict<(u32, u32)>,
    /// A temporally video-frame connected track that vanishes after `t'`
    /// has an image that also vanishes after `t'`. Witness is `(id, t)`.
    pub disappearance: ContinuityVerdict<(u32, usize)>,
    /// `A mnear B` implies `f(A) mnear f(B)`, one entry per tolerance in
    /// [`MNEAR_CLAUSE_EPS`].
    pub mnear_preserved: Vec<(f64, ContinuityVerdict<(u32, u32)>)>,
}

impl TemporalContinuityReport {
    pub fn holds(&self) -> bool {
        self.continuity.holds()
    }
}

/// Applies a per-frame lattice map to every slice of a track.
pub fn map_track<F>(f: &F, a: &TrackedRegion, codomain: Extent) -> Result<TrackedRegion>
where
    F: Fn(usize, Point) -> Option<Point>,
{
    let slices = a
        .slices()
        .iter()
        .enumerate()
        .map(|(t, s)| map_region(|p| f(t, p), s, codomain))
        .collect::<Result<Vec<_>>>()?;
    TrackedRegion::new(a.id(), slices)
}

/// Checks temporal continuity of `f: X → Y` over the tracked regions of `X`.
///
/// `f` must be total on `X`'s extent at every frame; the check fails with
/// `PartialMap` otherwise.
pub fn check_temporal_continuity<F>(
    f: F,
    x: &Video,
    y: &Video,
    tracks: &[TrackedRegion],
    scheme: AdjacencyScheme,
) -> Result<TemporalContinuityReport>
where
    F: Fn(usize, Point) -> Option<Point>,
{
    if x.len() != y.len() {
        return Err(Error::InvalidVideo(format!(
            "videos have {} and {} frames",
            x.len(),
            y.len()
        )));
    }
    for t in 0..x.len() {
        for p in x.extent().points() {
            let q = f(t, p).ok_or(Error::PartialMap(p))?;
            y.extent().check(q)?;
        }
    }
    if let Some(a) = tracks.iter().find(|a| a.frames() != x.len()) {
        return Err(Error::InvalidVideo(format!(
            "track {} has {} slices for a {}-frame video",
            a.id(),
            a.frames(),
            x.len()
        )));
    }
    let images = tracks
        .iter()
        .map(|a| map_track(&f, a, y.extent()))
        .collect::<Result<Vec<_>>>()?;

    let mut continuity = None;
    let mut tnear = None;
    let mut mnear: Vec<Option<(u32, u32)>> = vec![None; MNEAR_CLAUSE_EPS.len()];
    for i in 0..tracks.len() {
        for j in i + 1..tracks.len() {
            let (a, b) = (&tracks[i], &tracks[j]);
            let (fa, fb) = (&images[i], &images[j]);
            if continuity.is_none() {
                if let Some(times) = temporally_adjacent(a, b, scheme) {
                    if temporally_adjacent(fa, fb, scheme).is_none() {
                        continuity = Some(TrackPairWitness {
                            a: a.id(),
                            b: b.id(),
                            times,
                        });
                    }
                }
            }
            if tnear.is_none() && temporally_near(a, b).is_near() && !temporally_near(fa, fb).is_near() {
                tnear = Some((a.id(), b.id()));
            }
            for (slot, &eps) in mnear.iter_mut().zip(MNEAR_CLAUSE_EPS.iter()) {
                if slot.is_none()
                    && temporally_metric_near(a, b, eps)
                    && !temporally_metric_near(fa, fb, eps)
                {
                    *slot = Some((a.id(), b.id()));
                }
            }
        }
    }

    let mut disappearance = None;
    for (a, fa) in tracks.iter().zip(&images) {
        if let Some(t_prime) = temporally_video_frame_connected(a, scheme) {
            if let Some(t) = (t_prime + 1..fa.frames()).find(|&t| fa.present_at(t)) {
                disappearance = Some((a.id(), t));
                break;
            }
        }
    }

    Ok(TemporalContinuityReport {
        continuity: continuity.into(),
        tnear_preserved: tnear.into(),
        disappearance: disappearance.into(),
        mnear_preserved: MNEAR_CLAUSE_EPS
            .iter()
            .copied()
            .zip(mnear.into_iter().map(ContinuityVerdict::from))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::Region;

    const E: Extent = Extent::new(6, 4);

    fn setup() -> (Video, Vec<TrackedRegion>) {
        let v = Video::from_levels(E, vec![vec![0; 24]; 3], 1.0).unwrap();
        let a = TrackedRegion::new(0, vec![Region::new(E, [Point::new(0, 1)]).unwrap(); 3]).unwrap();
        let b = TrackedRegion::new(1, vec![Region::new(E, [Point::new(1, 1)]).unwrap(); 3]).unwrap();
        (v, vec![a, b])
    }

    #[test]
    fn identity_holds() {
        let (v, tracks) = setup();
        let r = check_temporal_continuity(|_, p| Some(p), &v, &v, &tracks, AdjacencyScheme::Four).unwrap();
        assert!(r.holds());
        assert!(r.tnear_preserved.holds());
        assert!(r.disappearance.holds());
        assert!(r.mnear_preserved.iter().all(|(_, v)| v.holds()));
    }

    #[test]
    fn constant_map_holds() {
        let (v, tracks) = setup();
        let r = check_temporal_continuity(|_, _| Some(Point::new(5, 3)), &v, &v, &tracks, AdjacencyScheme::Eight)
            .unwrap();
        assert!(r.holds());
    }

    #[test]
    fn dilation_separates_neighbors() {
        let (v, tracks) = setup();
        let wide = Video::from_levels(Extent::new(12, 4), vec![vec![0; 48]; 3], 1.0).unwrap();
        let r = check_temporal_continuity(
            |_, p| Some(Point::new(2 * p.x, p.y)),
            &v,
            &wide,
            &tracks,
            AdjacencyScheme::Eight,
        )
        .unwrap();
        assert!(!r.holds());
        assert_eq!(
            r.continuity.witness(),
            Some(&TrackPairWitness { a: 0, b: 1, times: vec![0, 1, 2] })
        );
    }

    #[test]
    fn partial_map_errors() {
        let (v, tracks) = setup();
        let r = check_temporal_continuity(|t, p| (t < 2).then_some(p), &v, &v, &tracks, AdjacencyScheme::Four);
        assert_eq!(r, Err(Error::PartialMap(Point::new(0, 0))));
    }
}
