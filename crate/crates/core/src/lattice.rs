//! Lattice positions, half-pixel sub-positions and per-voxel adjacency.

use std::cmp::Ordering;
use std::fmt;

/// An integer lattice position (a pixel or voxel location).
///
/// Ordering is row-major: by `y`, then by `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    /// Chebyshev (chessboard) distance.
    pub fn chebyshev(self, other: Point) -> u32 {
        let dx = self.x.abs_diff(other.x);
        let dy = self.y.abs_diff(other.y);
        dx.max(dy)
    }

    pub fn offset(self, dx: i32, dy: i32) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i32, i32)> for Point {
    fn from((x, y): (i32, i32)) -> Self {
        Point::new(x, y)
    }
}

/// A planar point at half-unit resolution, stored as doubled coordinates.
///
/// `HalfPoint { x2: 3, y2: -1 }` is the point (3/2, -1/2). Lattice points
/// have even coordinates, corner sub-pixels have odd ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPoint {
    pub x2: i32,
    pub y2: i32,
}

impl HalfPoint {
    pub const fn new(x2: i32, y2: i32) -> Self {
        HalfPoint { x2, y2 }
    }

    pub fn from_lattice(p: Point) -> Self {
        HalfPoint::new(2 * p.x, 2 * p.y)
    }

    pub fn x(self) -> f64 {
        f64::from(self.x2) / 2.0
    }

    pub fn y(self) -> f64 {
        f64::from(self.y2) / 2.0
    }

    pub fn is_lattice(self) -> bool {
        self.x2 % 2 == 0 && self.y2 % 2 == 0
    }

    pub fn is_corner(self) -> bool {
        self.x2 % 2 != 0 && self.y2 % 2 != 0
    }
}

impl fmt::Display for HalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x(), self.y())
    }
}

/// The four corner sub-pixels `(x ± 1/2, y ± 1/2)` of `p`, in ascending order.
pub fn boundary_corners(p: Point) -> [HalfPoint; 4] {
    let (cx, cy) = (2 * p.x, 2 * p.y);
    [
        HalfPoint::new(cx - 1, cy - 1),
        HalfPoint::new(cx - 1, cy + 1),
        HalfPoint::new(cx + 1, cy - 1),
        HalfPoint::new(cx + 1, cy + 1),
    ]
}

/// Number of corner sub-pixels shared by two voxels.
pub fn shared_corners(p: Point, q: Point) -> usize {
    let qc = boundary_corners(q);
    boundary_corners(p)
        .iter()
        .filter(|c| qc.contains(c))
        .count()
}

/// Per-voxel adjacency relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VoxelAdjacency {
    /// Same column, rows one apart.
    Column,
    /// Same row, columns one apart.
    Row,
    /// Columns one apart and rows one apart.
    Diagonal,
    /// Corner sets intersect.
    Boundary,
}

impl VoxelAdjacency {
    pub const ALL: [VoxelAdjacency; 4] = [
        VoxelAdjacency::Column,
        VoxelAdjacency::Row,
        VoxelAdjacency::Diagonal,
        VoxelAdjacency::Boundary,
    ];
}

/// Irreflexive adjacency of two voxels under `scheme`.
pub fn voxels_adjacent(p: Point, q: Point, scheme: VoxelAdjacency) -> bool {
    if p == q {
        return false;
    }
    let dx = p.x.abs_diff(q.x);
    let dy = p.y.abs_diff(q.y);
    match scheme {
        VoxelAdjacency::Column => dx == 0 && dy == 1,
        VoxelAdjacency::Row => dx == 1 && dy == 0,
        VoxelAdjacency::Diagonal => dx == 1 && dy == 1,
        VoxelAdjacency::Boundary => shared_corners(p, q) > 0,
    }
}
