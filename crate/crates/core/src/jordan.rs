//! Simple closed lattice curves and the interior/exterior split they induce.
//!
//! Curves are 8-connected and their complement is split with 4-connectivity,
//! the pairing under which a simple closed curve separates the lattice.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::frame::Extent;
use crate::lattice::Point;
use crate::region::Region;
use crate::topology::{connected_components, AdjacencyScheme};

/// A cyclically ordered ring of distinct lattice positions; consecutive
/// vertices (including last → first) are 8-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCycle {
    vertices: Vec<Point>,
}

impl OneCycle {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::NotACycle(format!(
                "a closed curve needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for v in &vertices {
            if !seen.insert(*v) {
                return Err(Error::NotACycle(format!("vertex {v} repeats")));
            }
        }
        for (a, b) in Self::pairs(&vertices) {
            if !AdjacencyScheme::Eight.adjacent(a, b) {
                return Err(Error::NotACycle(format!("{a} and {b} are not adjacent")));
            }
        }
        Ok(OneCycle { vertices })
    }

    fn pairs(vertices: &[Point]) -> impl Iterator<Item = (Point, Point)> + '_ {
        vertices
            .iter()
            .copied()
            .zip(vertices.iter().copied().cycle().skip(1))
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        Self::pairs(&self.vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The boundary ring of the axis-aligned rectangle with corners
    /// `(x0, y0)` and `(x1, y1)` inclusive, walked clockwise.
    pub fn rectangle(x0: i32, y0: i32, x1: i32, y1: i32) -> Result<Self> {
        if x1 <= x0 || y1 <= y0 {
            return Err(Error::NotACycle("rectangle ring needs positive width and height".into()));
        }
        let mut v = Vec::new();
        v.extend((x0..x1).map(|x| Point::new(x, y0)));
        v.extend((y0..y1).map(|y| Point::new(x1, y)));
        v.extend((x0 + 1..=x1).rev().map(|x| Point::new(x, y1)));
        v.extend((y0 + 1..=y1).rev().map(|y| Point::new(x0, y)));
        OneCycle::new(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JordanPartition {
    pub interior: Region,
    pub exterior: Region,
}

/// Splits `extent` minus the curve into the bounded interior and the
/// exterior (components of the complement that touch the extent border).
pub fn jordan_partition(cycle: &OneCycle, extent: Extent) -> Result<JordanPartition> {
    let curve = Region::new(extent, cycle.vertices().iter().copied())?;
    let complement = Region::full(extent).difference(&curve);
    if complement.is_empty() {
        return Err(Error::DegenerateCycle);
    }
    let mut interior = Region::empty(extent);
    let mut exterior = Region::empty(extent);
    for comp in connected_components(&complement, AdjacencyScheme::Four)? {
        if comp.iter().any(|p| extent.on_border(p)) {
            exterior = exterior.union(&comp);
        } else {
            interior = interior.union(&comp);
        }
    }
    if interior.is_empty() {
        return Err(Error::DegenerateCycle);
    }
    Ok(JordanPartition { interior, exterior })
}
