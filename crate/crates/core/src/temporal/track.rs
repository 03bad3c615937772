use crate::error::{Error, Result};
use crate::frame::{Extent, Video};
use crate::region::Region;
use crate::temporal::segment::SegmentationMask;
use crate::topology::{connected_components, AdjacencyScheme};

/// A region followed through time: one slice per frame index, empty where
/// the region is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedRegion {
    id: u32,
    slices: Vec<Region>,
}

impl TrackedRegion {
    /// All slices must share one extent; `slices[t]` is the region at frame `t`.
    pub fn new(id: u32, slices: Vec<Region>) -> Result<Self> {
        if let Some(first) = slices.first() {
            if slices.iter().any(|s| s.extent() != first.extent()) {
                return Err(Error::ExtentMismatch);
            }
        }
        Ok(TrackedRegion { id, slices })
    }

    /// A region present on `[birth, birth + present.len())` and absent
    /// elsewhere in a video of `frames` frames.
    pub fn spanning(id: u32, extent: Extent, frames: usize, birth: usize, present: Vec<Region>) -> Result<Self> {
        let mut slices = vec![Region::empty(extent); frames];
        if birth + present.len() > frames {
            return Err(Error::FrameIndex(birth + present.len() - 1, frames));
        }
        for (k, r) in present.into_iter().enumerate() {
            slices[birth + k] = r;
        }
        TrackedRegion::new(id, slices)
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn slices(&self) -> &[Region] {
        &self.slices
    }

    /// The slice at `t`; `None` past the end of the video.
    pub fn slice(&self, t: usize) -> Option<&Region> {
        self.slices.get(t)
    }

    pub fn frames(&self) -> usize {
        self.slices.len()
    }

    pub fn present_at(&self, t: usize) -> bool {
        self.slices.get(t).is_some_and(|s| !s.is_empty())
    }

    /// Frame indices with a nonempty slice.
    pub fn present_times(&self) -> impl Iterator<Item = usize> + '_ {
        self.slices
            .iter()
            .enumerate()
            .filter_map(|(t, s)| (!s.is_empty()).then_some(t))
    }

    pub fn birth(&self) -> Option<usize> {
        self.present_times().next()
    }

    pub fn death(&self) -> Option<usize> {
        self.slices.iter().rposition(|s| !s.is_empty())
    }
}

/// Lifespan `(birth, death)`: the first and last frames where `a` is present.
pub fn lifespan(a: &TrackedRegion) -> Result<(usize, usize)> {
    match (a.birth(), a.death()) {
        (Some(b), Some(d)) => Ok((b, d)),
        _ => Err(Error::NeverPresent(a.id())),
    }
}

/// Links the foreground components of consecutive masks into tracks.
///
/// Each component at `t + 1` joins the track alive at `t` with which it has
/// the largest cell overlap, ties going to the smaller id. Components that
/// overlap no live track start a new track. Several components may join one
/// track, in which case that track's slice is their union. Ids are assigned
/// in order of first appearance, components visited in row-major order of
/// their minimal cell.
pub fn track(video: &Video, masks: &[SegmentationMask], scheme: AdjacencyScheme) -> Result<Vec<TrackedRegion>> {
    let extent = video.extent();
    let frames = video.len();
    for pair in masks.windows(2) {
        if pair[1].t != pair[0].t + 1 {
            return Err(Error::InvalidVideo(format!(
                "masks must cover consecutive frames, found {} after {}",
                pair[1].t, pair[0].t
            )));
        }
    }
    if let Some(m) = masks.iter().find(|m| m.t >= frames) {
        return Err(Error::FrameIndex(m.t, frames));
    }

    let mut tracks: Vec<Vec<Region>> = Vec::new();
    let mut alive: Vec<usize> = Vec::new();
    for mask in masks {
        let t = mask.t;
        let components = if mask.foreground.is_empty() {
            Vec::new()
        } else {
            connected_components(&mask.foreground, scheme)?
        };
        let mut next_alive = Vec::new();
        for comp in components {
            let best = alive
                .iter()
                .map(|&id| (tracks[id][t - 1].overlap(&comp), id))
                .filter(|&(overlap, _)| overlap > 0)
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let id = match best {
                Some((_, id)) => id,
                None => {
                    tracks.push(vec![Region::empty(extent); frames]);
                    tracks.len() - 1
                }
            };
            let slot = &mut tracks[id][t];
            *slot = slot.union(&comp);
            if !next_alive.contains(&id) {
                next_alive.push(id);
            }
        }
        next_alive.sort_unstable();
        alive = next_alive;
    }
    tracks
        .into_iter()
        .enumerate()
        .map(|(id, slices)| TrackedRegion::new(id as u32, slices))
        .collect()
}
