use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::frame::Extent;
use crate::lattice::Point;

/// A finite set of lattice positions inside one frame extent.
///
/// Cells iterate in row-major order. A region may be empty; operations that
/// treat it as a subimage reject the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    extent: Extent,
    cells: BTreeSet<Point>,
}

impl Region {
    pub fn new(extent: Extent, cells: impl IntoIterator<Item = Point>) -> Result<Self> {
        let cells: BTreeSet<Point> = cells.into_iter().collect();
        if let Some(p) = cells.iter().find(|p| !extent.contains(**p)) {
            return Err(Error::OutOfExtent(*p, extent.width, extent.height));
        }
        Ok(Region { extent, cells })
    }

    pub fn empty(extent: Extent) -> Self {
        Region {
            extent,
            cells: BTreeSet::new(),
        }
    }

    pub fn full(extent: Extent) -> Self {
        Region {
            extent,
            cells: extent.points().collect(),
        }
    }

    /// Cells where `mask` (row-major) is set.
    pub fn from_mask(extent: Extent, mask: &[bool]) -> Result<Self> {
        if mask.len() != extent.area() {
            return Err(Error::InvalidFrame(format!(
                "mask has {} entries, extent needs {}",
                mask.len(),
                extent.area()
            )));
        }
        let cells = extent
            .points()
            .zip(mask)
            .filter_map(|(p, &m)| m.then_some(p))
            .collect();
        Ok(Region { extent, cells })
    }

    pub(crate) fn from_set_unchecked(extent: Extent, cells: BTreeSet<Point>) -> Self {
        Region { extent, cells }
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn cells(&self) -> &BTreeSet<Point> {
        &self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.cells.contains(&p)
    }

    /// Smallest cell in row-major order.
    pub fn min_cell(&self) -> Option<Point> {
        self.cells.first().copied()
    }

    pub fn intersects(&self, other: &Region) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.cells.iter().any(|p| large.cells.contains(p))
    }

    pub fn overlap(&self, other: &Region) -> usize {
        self.cells.intersection(&other.cells).count()
    }

    pub fn union(&self, other: &Region) -> Region {
        Region {
            extent: self.extent,
            cells: self.cells.union(&other.cells).copied().collect(),
        }
    }

    pub fn difference(&self, other: &Region) -> Region {
        Region {
            extent: self.extent,
            cells: self.cells.difference(&other.cells).copied().collect(),
        }
    }

    /// Row-major membership mask over the extent.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.extent.area()];
        for p in &self.cells {
            mask[self.extent.index(*p)] = true;
        }
        mask
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySubimage)
        } else {
            Ok(())
        }
    }
}

impl<'a> IntoIterator for &'a Region {
    type Item = &'a Point;
    type IntoIter = std::collections::btree_set::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.cells.iter()
    }
}
