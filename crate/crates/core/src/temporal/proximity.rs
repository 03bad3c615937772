use std::collections::VecDeque;

use crate::error::Result;
use crate::lattice::Point;
use crate::region::Region;
use crate::temporal::track::{lifespan, TrackedRegion};
use crate::topology::{subimages_adjacent, AdjacencyScheme};

/// Minimum Chebyshev distance between two regions. Zero iff they share a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GapDistance(pub u32);

impl GapDistance {
    pub fn value(self) -> f64 {
        f64::from(self.0)
    }

    /// ε-nearness: `D(A, B) ≤ ε`.
    pub fn within(self, eps: f64) -> bool {
        self.value() <= eps
    }
}

/// Gap between two nonempty regions.
///
/// Runs a multi-source breadth-first search from `b` over 8-neighbor steps,
/// confined to the bounding box of both regions; step count on that graph is
/// Chebyshev distance.
pub fn gap_distance(a: &Region, b: &Region) -> Result<GapDistance> {
    a.require_nonempty()?;
    b.require_nonempty()?;
    let (mut x0, mut y0, mut x1, mut y1) = (i32::MAX, i32::MAX, i32::MIN, i32::MIN);
    for p in a.iter().chain(b.iter()) {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let w = (x1 - x0 + 1) as usize;
    let h = (y1 - y0 + 1) as usize;
    let idx = |p: Point| (p.y - y0) as usize * w + (p.x - x0) as usize;
    let mut target = vec![false; w * h];
    for p in a.iter() {
        target[idx(p)] = true;
    }
    let mut dist = vec![u32::MAX; w * h];
    let mut queue = VecDeque::new();
    for p in b.iter() {
        if target[idx(p)] {
            return Ok(GapDistance(0));
        }
        dist[idx(p)] = 0;
        queue.push_back(p);
    }
    while let Some(p) = queue.pop_front() {
        let d = dist[idx(p)];
        for q in AdjacencyScheme::Eight.neighbors(p) {
            if q.x < x0 || q.x > x1 || q.y < y0 || q.y > y1 {
                continue;
            }
            let i = idx(q);
            if dist[i] != u32::MAX {
                continue;
            }
            if target[i] {
                return Ok(GapDistance(d + 1));
            }
            dist[i] = d + 1;
            queue.push_back(q);
        }
    }
    unreachable!("bounding box is 8-connected and contains both regions")
}

fn both_present<'a>(
    a: &'a TrackedRegion,
    b: &'a TrackedRegion,
) -> impl Iterator<Item = (usize, &'a Region, &'a Region)> + 'a {
    a.slices()
        .iter()
        .zip(b.slices())
        .enumerate()
        .filter(|(_, (sa, sb))| !sa.is_empty() && !sb.is_empty())
        .map(|(t, (sa, sb))| (t, sa, sb))
}

/// Result of the temporal discrete proximity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalNearness {
    /// Frames at which the two slices intersect.
    pub times: Vec<usize>,
}

impl TemporalNearness {
    pub fn is_near(&self) -> bool {
        !self.times.is_empty()
    }
}

/// `A tnear B`: some frame has intersecting slices.
pub fn temporally_near(a: &TrackedRegion, b: &TrackedRegion) -> TemporalNearness {
    TemporalNearness {
        times: both_present(a, b)
            .filter(|(_, sa, sb)| sa.intersects(sb))
            .map(|(t, _, _)| t)
            .collect(),
    }
}

/// Frames at which both slices are present and within gap `eps`.
pub fn metric_near_times(a: &TrackedRegion, b: &TrackedRegion, eps: f64) -> Vec<usize> {
    both_present(a, b)
        .filter(|(_, sa, sb)| {
            gap_distance(sa, sb)
                .map(|g| g.within(eps))
                .unwrap_or(false)
        })
        .map(|(t, _, _)| t)
        .collect()
}

/// `A mnear B` at tolerance `eps`.
pub fn temporally_metric_near(a: &TrackedRegion, b: &TrackedRegion, eps: f64) -> bool {
    both_present(a, b).any(|(_, sa, sb)| {
        gap_distance(sa, sb)
            .map(|g| g.within(eps))
            .unwrap_or(false)
    })
}

/// Lifespan intersection; descriptive nearness by lifespan.
pub fn lifespans_overlap(a: &TrackedRegion, b: &TrackedRegion) -> Result<bool> {
    Ok(common_lifespan(a, b)?.is_some())
}

/// Intersection of two lifespans, if nonempty.
pub fn common_lifespan(a: &TrackedRegion, b: &TrackedRegion) -> Result<Option<(usize, usize)>> {
    let (ba, da) = lifespan(a)?;
    let (bb, db) = lifespan(b)?;
    let (lo, hi) = (ba.max(bb), da.min(db));
    Ok((lo <= hi).then_some((lo, hi)))
}

/// Frames of the common lifespan at which the slices are adjacent.
///
/// `None` when the lifespans do not overlap or no such frame exists.
pub fn temporally_adjacent(
    a: &TrackedRegion,
    b: &TrackedRegion,
    scheme: AdjacencyScheme,
) -> Option<Vec<usize>> {
    let (lo, hi) = common_lifespan(a, b).ok().flatten()?;
    let times: Vec<usize> = (lo..=hi)
        .filter(|&t| match (a.slice(t), b.slice(t)) {
            (Some(sa), Some(sb)) => subimages_adjacent(sa, sb, scheme).unwrap_or(false),
            _ => false,
        })
        .collect();
    (!times.is_empty()).then_some(times)
}
