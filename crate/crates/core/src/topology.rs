//! Set-level adjacency, proximity, connectedness and continuity within one frame.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::frame::{Extent, Frame};
use crate::lattice::{voxels_adjacent, Point, VoxelAdjacency};
use crate::region::Region;

/// Pixel adjacency used for connectedness.
///
/// `Four` is column ∪ row adjacency, `Eight` adds diagonal adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdjacencyScheme {
    Four,
    Eight,
}

const FOUR: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
const EIGHT: [(i32, i32); 8] = [
    (1, 0),
    (0, 1),
    (-1, 0),
    (0, -1),
    (1, 1),
    (-1, 1),
    (-1, -1),
    (1, -1),
];
// Neighbors that come later in row-major order.
const FOUR_FORWARD: [(i32, i32); 2] = [(1, 0), (0, 1)];
const EIGHT_FORWARD: [(i32, i32); 4] = [(1, 0), (-1, 1), (0, 1), (1, 1)];

impl AdjacencyScheme {
    pub fn adjacent(self, p: Point, q: Point) -> bool {
        let four = voxels_adjacent(p, q, VoxelAdjacency::Column)
            || voxels_adjacent(p, q, VoxelAdjacency::Row);
        match self {
            AdjacencyScheme::Four => four,
            AdjacencyScheme::Eight => four || voxels_adjacent(p, q, VoxelAdjacency::Diagonal),
        }
    }

    pub fn offsets(self) -> &'static [(i32, i32)] {
        match self {
            AdjacencyScheme::Four => &FOUR,
            AdjacencyScheme::Eight => &EIGHT,
        }
    }

    pub(crate) fn forward_offsets(self) -> &'static [(i32, i32)] {
        match self {
            AdjacencyScheme::Four => &FOUR_FORWARD,
            AdjacencyScheme::Eight => &EIGHT_FORWARD,
        }
    }

    pub fn neighbors(self, p: Point) -> impl Iterator<Item = Point> {
        self.offsets().iter().map(move |&(dx, dy)| p.offset(dx, dy))
    }

    /// `4` or `8`.
    pub fn degree(self) -> u8 {
        match self {
            AdjacencyScheme::Four => 4,
            AdjacencyScheme::Eight => 8,
        }
    }

    pub fn from_degree(d: u8) -> Option<Self> {
        match d {
            4 => Some(AdjacencyScheme::Four),
            8 => Some(AdjacencyScheme::Eight),
            _ => None,
        }
    }
}

/// Outcome of a continuity check.
///
/// `holds()` is false exactly when a witness of the violated implication is
/// present.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityVerdict<W> {
    witness: Option<W>,
}

impl<W> ContinuityVerdict<W> {
    pub fn holds_trivially() -> Self {
        ContinuityVerdict { witness: None }
    }

    pub fn violated(witness: W) -> Self {
        ContinuityVerdict {
            witness: Some(witness),
        }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&W> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<W> {
        self.witness
    }
}

impl<W> From<Option<W>> for ContinuityVerdict<W> {
    fn from(witness: Option<W>) -> Self {
        ContinuityVerdict { witness }
    }
}

fn require_pair(a: &Region, b: &Region) -> Result<()> {
    a.require_nonempty()?;
    b.require_nonempty()?;
    if a.extent() != b.extent() {
        return Err(Error::ExtentMismatch);
    }
    Ok(())
}

/// Discrete proximity: the subimages share a point.
pub fn near_discrete(a: &Region, b: &Region) -> Result<bool> {
    require_pair(a, b)?;
    Ok(a.intersects(b))
}

/// Some `p ∈ a`, `q ∈ b` are equal or adjacent under `scheme`.
pub fn subimages_adjacent(a: &Region, b: &Region, scheme: AdjacencyScheme) -> Result<bool> {
    require_pair(a, b)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    Ok(small
        .iter()
        .any(|p| large.contains(p) || scheme.neighbors(p).any(|q| large.contains(q))))
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Partitions `r` into maximal κ-connected components, ordered by each
/// component's minimal cell (row-major).
pub fn connected_components(r: &Region, scheme: AdjacencyScheme) -> Result<Vec<Region>> {
    r.require_nonempty()?;
    let cells: Vec<Point> = r.iter().collect();
    let index: HashMap<Point, usize> = cells.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut sets = DisjointSets::new(cells.len());
    for (i, p) in cells.iter().enumerate() {
        for &(dx, dy) in scheme.forward_offsets() {
            if let Some(&j) = index.get(&p.offset(dx, dy)) {
                sets.union(i, j);
            }
        }
    }
    // Cells are visited in row-major order, so the first cell seen for a root
    // is that component's minimal cell and BTreeMap order is output order.
    let mut first_seen: HashMap<usize, Point> = HashMap::new();
    let mut groups: BTreeMap<Point, BTreeSet<Point>> = BTreeMap::new();
    for (i, p) in cells.iter().enumerate() {
        let root = sets.find(i);
        let key = *first_seen.entry(root).or_insert(*p);
        groups.entry(key).or_default().insert(*p);
    }
    Ok(groups
        .into_values()
        .map(|cells| Region::from_set_unchecked(r.extent(), cells))
        .collect())
}

pub fn is_connected(r: &Region, scheme: AdjacencyScheme) -> Result<bool> {
    Ok(connected_components(r, scheme)?.len() == 1)
}

/// Checks κ-continuity of a lattice map `f` from `domain` into `codomain`.
///
/// The set-level condition reduces to pixel pairs: every pair of adjacent
/// pixels must map to equal or adjacent pixels. The witness is the first
/// violating pair as singleton subimages, scanning `domain` row-major.
pub fn check_kappa_continuity<F>(
    f: F,
    domain: Extent,
    codomain: Extent,
    scheme: AdjacencyScheme,
) -> Result<ContinuityVerdict<(Region, Region)>>
where
    F: Fn(Point) -> Option<Point>,
{
    let mut image = Vec::with_capacity(domain.area());
    for p in domain.points() {
        let q = f(p).ok_or(Error::PartialMap(p))?;
        codomain.check(q)?;
        image.push(q);
    }
    for p in domain.points() {
        let fp = image[domain.index(p)];
        for &(dx, dy) in scheme.forward_offsets() {
            let q = p.offset(dx, dy);
            if !domain.contains(q) {
                continue;
            }
            let fq = image[domain.index(q)];
            if fp != fq && !scheme.adjacent(fp, fq) {
                let a = Region::from_set_unchecked(domain, BTreeSet::from([p]));
                let b = Region::from_set_unchecked(domain, BTreeSet::from([q]));
                return Ok(ContinuityVerdict::violated((a, b)));
            }
        }
    }
    Ok(ContinuityVerdict::holds_trivially())
}

/// Image of a region under a lattice map.
pub fn map_region<F>(f: F, r: &Region, codomain: Extent) -> Result<Region>
where
    F: Fn(Point) -> Option<Point>,
{
    let mut cells = BTreeSet::new();
    for p in r.iter() {
        let q = f(p).ok_or(Error::PartialMap(p))?;
        codomain.check(q)?;
        cells.insert(q);
    }
    Ok(Region::from_set_unchecked(codomain, cells))
}

/// Minimal cover of a region by κ-connected, value-constant subregions.
#[derive(Debug, Clone, PartialEq)]
pub struct CatCover {
    pub count: usize,
    pub cover: Vec<Region>,
}

/// Splits `e` into the connected components of its level classes.
///
/// Two maximal components of one level are never adjacent and components of
/// different levels cannot be merged, so no value-constant connected cover
/// has fewer members.
pub fn cat_number(e: &Region, frame: &Frame, scheme: AdjacencyScheme) -> Result<CatCover> {
    e.require_nonempty()?;
    if e.extent() != frame.extent() {
        return Err(Error::ExtentMismatch);
    }
    let mut by_level: BTreeMap<u8, BTreeSet<Point>> = BTreeMap::new();
    for p in e.iter() {
        by_level.entry(frame.level_unchecked(p)).or_default().insert(p);
    }
    let mut cover = Vec::new();
    for cells in by_level.into_values() {
        let class = Region::from_set_unchecked(e.extent(), cells);
        cover.extend(connected_components(&class, scheme)?);
    }
    cover.sort_by_key(|c| c.min_cell());
    Ok(CatCover {
        count: cover.len(),
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::TimeStamp;

    fn pts(v: &[(i32, i32)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    fn region(e: Extent, v: &[(i32, i32)]) -> Region {
        Region::new(e, pts(v)).unwrap()
    }

    const E8: Extent = Extent::new(8, 8);

    #[test]
    fn near_discrete_examples() {
        let a = region(E8, &[(0, 0)]);
        assert!(near_discrete(&a, &region(E8, &[(0, 0), (1, 0)])).unwrap());
        assert!(!near_discrete(&a, &region(E8, &[(5, 5)])).unwrap());
        assert_eq!(
            near_discrete(&a, &Region::empty(E8)),
            Err(Error::EmptySubimage)
        );
    }

    #[test]
    fn adjacency_depends_on_scheme() {
        let a = region(E8, &[(0, 0)]);
        let b = region(E8, &[(1, 1)]);
        assert!(subimages_adjacent(&a, &b, AdjacencyScheme::Eight).unwrap());
        assert!(!subimages_adjacent(&a, &b, AdjacencyScheme::Four).unwrap());
        assert!(subimages_adjacent(&a, &a, AdjacencyScheme::Four).unwrap());
    }

    #[test]
    fn components_split_far_cells() {
        let r = region(E8, &[(0, 0), (1, 0), (5, 5)]);
        let comps = connected_components(&r, AdjacencyScheme::Four).unwrap();
        assert_eq!(
            comps,
            vec![region(E8, &[(0, 0), (1, 0)]), region(E8, &[(5, 5)])]
        );
    }

    #[test]
    fn components_scheme_sensitivity() {
        let r = region(E8, &[(0, 0), (1, 1)]);
        assert!(is_connected(&r, AdjacencyScheme::Eight).unwrap());
        assert_eq!(connected_components(&r, AdjacencyScheme::Four).unwrap().len(), 2);
    }

    #[test]
    fn components_of_anti_diagonal_merge_under_eight() {
        // (1,0) and (0,1) only touch through the south-west offset.
        let r = region(E8, &[(1, 0), (0, 1), (3, 3)]);
        let comps = connected_components(&r, AdjacencyScheme::Eight).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], region(E8, &[(1, 0), (0, 1)]));
    }

    #[test]
    fn u_shape_is_one_component() {
        let r = region(E8, &[(0, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2)]);
        assert!(is_connected(&r, AdjacencyScheme::Four).unwrap());
    }

    #[test]
    fn singleton_connected_and_empty_rejected() {
        assert!(is_connected(&region(E8, &[(4, 4)]), AdjacencyScheme::Four).unwrap());
        assert!(!is_connected(&region(E8, &[(0, 0), (7, 7)]), AdjacencyScheme::Eight).unwrap());
        assert_eq!(
            connected_components(&Region::empty(E8), AdjacencyScheme::Four),
            Err(Error::EmptySubimage)
        );
    }

    #[test]
    fn identity_and_constant_maps_are_continuous() {
        for scheme in [AdjacencyScheme::Four, AdjacencyScheme::Eight] {
            let id = check_kappa_continuity(Some, E8, E8, scheme).unwrap();
            assert!(id.holds());
            let c = check_kappa_continuity(|_| Some(Point::new(3, 3)), E8, E8, scheme).unwrap();
            assert!(c.holds());
        }
    }

    #[test]
    fn horizontal_doubling_fails_at_origin() {
        let v = check_kappa_continuity(
            |p| Some(Point::new(2 * p.x, p.y)),
            Extent::new(4, 4),
            Extent::new(8, 4),
            AdjacencyScheme::Four,
        )
        .unwrap();
        assert!(!v.holds());
        let (a, b) = v.witness().unwrap();
        assert_eq!(a.min_cell(), Some(Point::new(0, 0)));
        assert_eq!(b.min_cell(), Some(Point::new(1, 0)));
    }

    #[test]
    fn partial_and_escaping_maps_error() {
        let partial = check_kappa_continuity(
            |p| (p.x < 3).then_some(p),
            Extent::new(4, 4),
            Extent::new(4, 4),
            AdjacencyScheme::Four,
        );
        assert_eq!(partial, Err(Error::PartialMap(Point::new(3, 0))));
        let escaping = check_kappa_continuity(
            |p| Some(p.offset(1, 0)),
            Extent::new(4, 4),
            Extent::new(4, 4),
            AdjacencyScheme::Four,
        );
        assert!(matches!(escaping, Err(Error::OutOfExtent(..))));
    }

    fn frame(e: Extent, f: impl FnMut(Point) -> u8) -> Frame {
        Frame::from_fn(e, TimeStamp::at(0, 1.0), f).unwrap()
    }

    #[test]
    fn cat_number_constant_region() {
        let f = frame(E8, |_| 9);
        let e = region(E8, &[(1, 1), (2, 1), (2, 2)]);
        let c = cat_number(&e, &f, AdjacencyScheme::Four).unwrap();
        assert_eq!(c.count, 1);
        assert_eq!(c.cover, vec![e]);
    }

    #[test]
    fn cat_number_value_split() {
        let f = frame(E8, |p| if p.x == 0 { 0 } else { 255 });
        let e = region(E8, &[(0, 0), (1, 0)]);
        let c = cat_number(&e, &f, AdjacencyScheme::Eight).unwrap();
        assert_eq!(c.count, 2);
        assert_eq!(c.cover, vec![region(E8, &[(0, 0)]), region(E8, &[(1, 0)])]);
    }

    #[test]
    fn cat_number_same_level_disconnected() {
        let f = frame(E8, |_| 100);
        let e = region(E8, &[(0, 0), (1, 1)]);
        assert_eq!(cat_number(&e, &f, AdjacencyScheme::Four).unwrap().count, 2);
        assert_eq!(cat_number(&e, &f, AdjacencyScheme::Eight).unwrap().count, 1);
    }
}
