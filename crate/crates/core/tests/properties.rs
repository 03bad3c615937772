//! Randomized and exhaustive checks of the lattice, topology and temporal
//! operations against independent brute-force oracles.

use std::collections::{BTreeSet, HashSet, VecDeque};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdt_core::temporal::*;
use tdt_core::*;

// ---------------------------------------------------------------- oracles

fn bfs_components(cells: &BTreeSet<Point>, four: bool) -> Vec<BTreeSet<Point>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &start in cells {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if (dx, dy) == (0, 0) || (four && dx != 0 && dy != 0) {
                        continue;
                    }
                    let q = Point::new(p.x + dx, p.y + dy);
                    if cells.contains(&q) && seen.insert(q) {
                        comp.insert(q);
                        queue.push_back(q);
                    }
                }
            }
        }
        out.push(comp);
    }
    out.sort();
    out
}

fn brute_gap(a: &Region, b: &Region) -> u32 {
    a.iter()
        .flat_map(|p| b.iter().map(move |q| p.x.abs_diff(q.x).max(p.y.abs_diff(q.y))))
        .min()
        .unwrap()
}

fn brute_adjacent(a: &Region, b: &Region, four: bool) -> bool {
    a.iter().any(|p| {
        b.iter().any(|q| {
            let (dx, dy) = (p.x.abs_diff(q.x), p.y.abs_diff(q.y));
            if four {
                dx + dy <= 1
            } else {
                dx <= 1 && dy <= 1
            }
        })
    })
}

fn random_region(rng: &mut ChaCha8Rng, e: Extent, density: f64) -> Region {
    let cells: Vec<Point> = e.points().filter(|_| rng.gen_bool(density)).collect();
    Region::new(e, cells).unwrap()
}

fn random_nonempty(rng: &mut ChaCha8Rng, e: Extent, density: f64) -> Region {
    loop {
        let r = random_region(rng, e, density);
        if !r.is_empty() {
            return r;
        }
    }
}

fn scheme_of(four: bool) -> AdjacencyScheme {
    if four {
        AdjacencyScheme::Four
    } else {
        AdjacencyScheme::Eight
    }
}

// ---------------------------------------------------------------- lattice

#[test]
fn boundary_adjacency_is_chebyshev_one_on_16x16() {
    let e = Extent::new(16, 16);
    for p in e.points() {
        for q in e.points() {
            let boundary = voxels_adjacent(p, q, VoxelAdjacency::Boundary);
            assert_eq!(boundary, p != q && p.chebyshev(q) == 1, "{p} {q}");
            for s in VoxelAdjacency::ALL {
                assert_eq!(voxels_adjacent(p, q, s), voxels_adjacent(q, p, s));
            }
            if voxels_adjacent(p, q, VoxelAdjacency::Diagonal) {
                assert!(boundary);
            }
        }
    }
}

#[test]
fn shared_corner_counts() {
    let e = Extent::new(6, 6);
    for p in e.points() {
        for q in e.points() {
            let a: HashSet<_> = boundary_corners(p).into_iter().collect();
            let b: HashSet<_> = boundary_corners(q).into_iter().collect();
            let shared = a.intersection(&b).count();
            let (dx, dy) = (p.x.abs_diff(q.x), p.y.abs_diff(q.y));
            let want = match (dx, dy) {
                (0, 0) => 4,
                (1, 0) | (0, 1) => 2,
                (1, 1) => 1,
                _ => 0,
            };
            assert_eq!(shared, want, "{p} {q}");
        }
    }
}

#[test]
fn corners_always_four_distinct() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let p = Point::new(rng.gen_range(-1000..1000), rng.gen_range(-1000..1000));
        let set: HashSet<_> = boundary_corners(p).into_iter().collect();
        assert_eq!(set.len(), 4);
        assert!(set.iter().all(|c| c.is_corner()));
    }
}

proptest! {
    #[test]
    fn frame_value_round_trip(levels in proptest::collection::vec(any::<u8>(), 1..64usize), w in 1u32..8) {
        let h = (levels.len() as u32 / w).max(1);
        let n = (w * h) as usize;
        prop_assume!(levels.len() >= n);
        let e = Extent::new(w, h);
        let f = Frame::new(e, TimeStamp::at(0, 1.0), levels[..n].to_vec()).unwrap();
        for (i, p) in e.points().enumerate() {
            prop_assert_eq!(f.value_at(p).unwrap().level(), levels[i]);
        }
    }

    #[test]
    fn zero_derivatives_iff_constant(levels in proptest::collection::vec(0u8..3, 64)) {
        let e = Extent::new(8, 8);
        let f = Frame::new(e, TimeStamp::at(0, 1.0), levels.clone()).unwrap();
        let all_zero = e.points().all(|p| {
            [Axis::X, Axis::Y].iter().all(|&a| f.partial_derivative(p, a).map_or(true, |d| d == 0))
        });
        let constant = levels.iter().all(|&l| l == levels[0]);
        prop_assert_eq!(all_zero, constant);
    }
}

// ---------------------------------------------------------------- topology

#[test]
fn near_discrete_and_adjacency_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let e = Extent::new(8, 8);
    for _ in 0..300 {
        let a = random_nonempty(&mut rng, e, 0.08);
        let b = random_nonempty(&mut rng, e, 0.08);
        let inter = a.cells().intersection(b.cells()).next().is_some();
        assert_eq!(near_discrete(&a, &b).unwrap(), inter);
        for four in [true, false] {
            let adj = subimages_adjacent(&a, &b, scheme_of(four)).unwrap();
            assert_eq!(adj, brute_adjacent(&a, &b, four));
            if inter {
                assert!(adj);
            }
        }
    }
}

#[test]
fn components_match_flood_fill() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let e = Extent::new(12, 12);
    for _ in 0..200 {
        let density = rng.gen_range(0.2..0.7);
        let r = random_nonempty(&mut rng, e, density);
        for four in [true, false] {
            let comps = connected_components(&r, scheme_of(four)).unwrap();
            let mut got: Vec<BTreeSet<Point>> = comps.iter().map(|c| c.cells().clone()).collect();
            // Output order is by minimal row-major cell.
            let mins: Vec<_> = comps.iter().map(|c| c.min_cell().unwrap()).collect();
            assert!(mins.windows(2).all(|w| w[0] < w[1]));
            got.sort();
            assert_eq!(got, bfs_components(r.cells(), four));
            assert_eq!(is_connected(&r, scheme_of(four)).unwrap(), got.len() == 1);
            // No two components touch.
            for i in 0..comps.len() {
                for j in i + 1..comps.len() {
                    assert!(!subimages_adjacent(&comps[i], &comps[j], scheme_of(four)).unwrap());
                }
            }
        }
    }
}

#[test]
fn doubling_map_witness_is_origin_pair() {
    // Exhaustive pair scan: the first adjacent pair in row-major order whose
    // images are more than one apart.
    let dom = Extent::new(4, 4);
    let f = |p: Point| Point::new(2 * p.x, p.y);
    let mut expected = None;
    'outer: for p in dom.points() {
        for q in dom.points() {
            if q > p && p.chebyshev(q) == 1 && (p.x == q.x || p.y == q.y) && f(p).chebyshev(f(q)) > 1 {
                expected = Some((p, q));
                break 'outer;
            }
        }
    }
    assert_eq!(expected, Some((Point::new(0, 0), Point::new(1, 0))));
    let v = check_kappa_continuity(|p| Some(f(p)), dom, Extent::new(8, 4), AdjacencyScheme::Four).unwrap();
    let (a, b) = v.witness().unwrap();
    assert_eq!((a.min_cell().unwrap(), b.min_cell().unwrap()), expected.unwrap());
}

/// Minimum number of blocks over all partitions of `cells` into
/// value-constant connected blocks, by restricted-growth enumeration.
fn brute_min_cover(cells: &[Point], level: &dyn Fn(Point) -> u8, four: bool) -> usize {
    fn rec(
        i: usize,
        cells: &[Point],
        blocks: &mut Vec<Vec<Point>>,
        level: &dyn Fn(Point) -> u8,
        four: bool,
        best: &mut usize,
    ) {
        if blocks.len() >= *best {
            return;
        }
        if i == cells.len() {
            let ok = blocks.iter().all(|b| {
                let set: BTreeSet<Point> = b.iter().copied().collect();
                bfs_components(&set, four).len() == 1
            });
            if ok {
                *best = blocks.len();
            }
            return;
        }
        let p = cells[i];
        for k in 0..blocks.len() {
            if level(blocks[k][0]) == level(p) {
                blocks[k].push(p);
                rec(i + 1, cells, blocks, level, four, best);
                blocks[k].pop();
            }
        }
        blocks.push(vec![p]);
        rec(i + 1, cells, blocks, level, four, best);
        blocks.pop();
    }
    let mut best = usize::MAX;
    rec(0, cells, &mut Vec::new(), level, four, &mut best);
    best
}

#[test]
fn cat_number_is_minimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let e = Extent::new(5, 5);
    for _ in 0..60 {
        let f = Frame::from_fn(e, TimeStamp::at(0, 1.0), |_| [0u8, 128, 255][rng.gen_range(0..3)]).unwrap();
        let n = rng.gen_range(1..=9);
        let mut all: Vec<Point> = e.points().collect();
        let mut cells = Vec::new();
        for _ in 0..n {
            cells.push(all.swap_remove(rng.gen_range(0..all.len())));
        }
        let r = Region::new(e, cells.clone()).unwrap();
        for four in [true, false] {
            let c = cat_number(&r, &f, scheme_of(four)).unwrap();
            let level = |p: Point| f.value_at(p).unwrap().level();
            assert_eq!(c.count, brute_min_cover(&cells, &level, four));
            let union: BTreeSet<Point> = c.cover.iter().flat_map(|m| m.iter()).collect();
            assert_eq!(&union, r.cells());
            assert_eq!(c.cover.iter().map(|m| m.len()).sum::<usize>(), r.len());
        }
    }
}

/// Cells strictly inside the closed polygon through the cycle's cell centers,
/// by crossing parity of a ray towards +x.
fn ray_cast_interior(cycle: &[Point], e: Extent) -> BTreeSet<Point> {
    let on_curve: HashSet<Point> = cycle.iter().copied().collect();
    e.points()
        .filter(|p| !on_curve.contains(p))
        .filter(|p| {
            let mut inside = false;
            for i in 0..cycle.len() {
                let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                if (a.y > p.y) != (b.y > p.y) {
                    let x = f64::from(a.x) + f64::from(p.y - a.y) * f64::from(b.x - a.x) / f64::from(b.y - a.y);
                    if x > f64::from(p.x) {
                        inside = !inside;
                    }
                }
            }
            inside
        })
        .collect()
}

#[test]
fn rectangular_rings_enclose_analytic_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e = Extent::new(16, 16);
    for _ in 0..50 {
        let x0 = rng.gen_range(0..13);
        let y0 = rng.gen_range(0..13);
        let x1 = rng.gen_range(x0 + 2..16);
        let y1 = rng.gen_range(y0 + 2..16);
        let c = OneCycle::rectangle(x0, y0, x1, y1).unwrap();
        let part = jordan_partition(&c, e).unwrap();
        let (w, h) = ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize);
        assert_eq!(part.interior.len(), (w - 2) * (h - 2));
        assert_eq!(part.interior.cells(), &ray_cast_interior(c.vertices(), e));
        assert!(!part.interior.intersects(&part.exterior));
        assert_eq!(part.interior.len() + part.exterior.len() + c.len(), e.area());
        assert!(part.interior.iter().all(|p| !e.on_border(p)));
    }
}

#[test]
fn diamond_ring_interior_matches_ray_cast() {
    // An 8-connected ring with diagonal edges only.
    let mut v = Vec::new();
    let r = 4;
    let c = Point::new(7, 7);
    for k in 0..r {
        v.push(c.offset(k, -r + k));
    }
    for k in 0..r {
        v.push(c.offset(r - k, k));
    }
    for k in 0..r {
        v.push(c.offset(-k, r - k));
    }
    for k in 0..r {
        v.push(c.offset(-r + k, -k));
    }
    let cycle = OneCycle::new(v).unwrap();
    let e = Extent::new(16, 16);
    let part = jordan_partition(&cycle, e).unwrap();
    assert_eq!(part.interior.cells(), &ray_cast_interior(cycle.vertices(), e));
    assert_eq!(part.interior.len(), 25);
}

// ---------------------------------------------------------------- temporal

#[test]
fn gap_matches_pair_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let e = Extent::new(14, 9);
    for _ in 0..300 {
        let a = random_nonempty(&mut rng, e, 0.04);
        let b = random_nonempty(&mut rng, e, 0.04);
        let g = gap_distance(&a, &b).unwrap();
        assert_eq!(g.0, brute_gap(&a, &b));
        assert_eq!(g.0 == 0, a.intersects(&b));
    }
}

/// Four-formula foreground, evaluated directly on level buffers.
fn brute_foreground(now: &Frame, next: &Frame, tol: i32) -> BTreeSet<Point> {
    let (w, h) = (now.width() as i32, now.height() as i32);
    let at = |f: &Frame, x: i32, y: i32| i32::from(f.levels()[(y * w + x) as usize]);
    let mut out = BTreeSet::new();
    for y in 0..h - 1 {
        for x in 0..w - 1 {
            let dx_now = at(now, x + 1, y) - at(now, x, y);
            let dx_next = at(next, x + 1, y) - at(next, x, y);
            let dy_now = at(now, x, y + 1) - at(now, x, y);
            let dy_next = at(next, x, y + 1) - at(next, x, y);
            if (dx_next - dx_now).abs() > tol || (dy_next - dy_now).abs() > tol {
                out.insert(Point::new(x, y));
            }
        }
    }
    out
}

#[test]
fn moving_square_segmentation_matches_formula() {
    let e = Extent::new(8, 8);
    let square = |x0: i32| move |p: Point| if (x0..x0 + 2).contains(&p.x) && (3..5).contains(&p.y) { 255 } else { 0 };
    let v = Video::from_levels(e, vec![e.points().map(square(2)).collect(), e.points().map(square(3)).collect()], 1.0)
        .unwrap();
    let m = segment(&v, 0, 0).unwrap();
    let want = brute_foreground(v.frame(0).unwrap(), v.frame(1).unwrap(), 0);
    assert_eq!(m.foreground.cells(), &want);
    assert!(!want.is_empty());
    assert_eq!(m.foreground.len() + m.background.len(), e.area());
}

#[test]
fn segmentation_threshold_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let e = Extent::new(10, 10);
    for _ in 0..20 {
        let base: Vec<u8> = (0..100).map(|_| rng.gen_range(0..200)).collect();
        let noisy: Vec<u8> = base.iter().map(|&l| l + rng.gen_range(0..6)).collect();
        let v = Video::from_levels(e, vec![base, noisy], 1.0).unwrap();
        let strict = segment(&v, 0, 0).unwrap().foreground;
        let loose = segment(&v, 0, 4).unwrap().foreground;
        assert!(loose.cells().is_subset(strict.cells()));
        for tol in [0, 4] {
            let want = brute_foreground(v.frame(0).unwrap(), v.frame(1).unwrap(), tol);
            assert_eq!(segment(&v, 0, tol as u16).unwrap().foreground.cells(), &want);
        }
    }
}

fn random_track(rng: &mut ChaCha8Rng, id: u32, e: Extent, frames: usize) -> TrackedRegion {
    let birth = rng.gen_range(0..frames);
    let death = rng.gen_range(birth..frames);
    let (mut x, mut y) = (rng.gen_range(0..e.width as i32 - 2), rng.gen_range(0..e.height as i32 - 2));
    let slices = (0..frames)
        .map(|t| {
            x = (x + rng.gen_range(-1..=1)).clamp(0, e.width as i32 - 2);
            y = (y + rng.gen_range(-1..=1)).clamp(0, e.height as i32 - 2);
            if (birth..=death).contains(&t) {
                Region::new(e, [Point::new(x, y), Point::new(x + 1, y), Point::new(x, y + 1)]).unwrap()
            } else {
                Region::empty(e)
            }
        })
        .collect();
    TrackedRegion::new(id, slices).unwrap()
}

#[test]
fn proximity_implications_on_random_scenes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let e = Extent::new(10, 10);
    for _ in 0..200 {
        let a = random_track(&mut rng, 0, e, 6);
        let b = random_track(&mut rng, 1, e, 6);
        let near = temporally_near(&a, &b);
        // Frame-by-frame intersection oracle.
        let want: Vec<usize> = (0..6)
            .filter(|&t| a.slice(t).unwrap().cells().intersection(b.slice(t).unwrap().cells()).next().is_some())
            .collect();
        assert_eq!(near.times, want);
        assert_eq!(temporally_metric_near(&a, &b, 0.0), near.is_near());
        for eps in [0.0, 1.0, 2.0, 5.5] {
            if near.is_near() {
                assert!(temporally_metric_near(&a, &b, eps));
            }
            let want = (0..6).any(|t| {
                let (sa, sb) = (a.slice(t).unwrap(), b.slice(t).unwrap());
                !sa.is_empty() && !sb.is_empty() && f64::from(brute_gap(sa, sb)) <= eps
            });
            assert_eq!(temporally_metric_near(&a, &b, eps), want);
        }
        if near.is_near() {
            assert!(lifespans_overlap(&a, &b).unwrap());
            assert!(temporally_adjacent(&a, &b, AdjacencyScheme::Four).is_some());
        }
        if let Some(times) = temporally_adjacent(&a, &b, AdjacencyScheme::Eight) {
            for t in times {
                assert!(brute_adjacent(a.slice(t).unwrap(), b.slice(t).unwrap(), false));
            }
        }
    }
}

#[test]
fn same_time_images_are_metric_near_at_their_gap() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let e = Extent::new(12, 12);
    for _ in 0..50 {
        let t = rng.gen_range(0..4);
        let ra = random_nonempty(&mut rng, e, 0.05);
        let rb = random_nonempty(&mut rng, e, 0.05);
        let a = TrackedRegion::spanning(0, e, 4, t, vec![ra.clone()]).unwrap();
        let b = TrackedRegion::spanning(1, e, 4, t, vec![rb.clone()]).unwrap();
        let gap = f64::from(brute_gap(&ra, &rb));
        assert!(temporally_metric_near(&a, &b, gap));
    }
}

#[test]
fn location_value_implies_shared_level_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let e = Extent::new(6, 6);
    for _ in 0..100 {
        let buffers = (0..2).map(|_| (0..36).map(|_| rng.gen_range(0..12u8) * 20).collect()).collect();
        let v = Video::from_levels(e, buffers, 1.0).unwrap();
        let a = random_nonempty(&mut rng, e, 0.1);
        let b = random_nonempty(&mut rng, e, 0.1);
        let la: BTreeSet<u8> = a.iter().map(|p| v.frame(0).unwrap().value_at(p).unwrap().level()).collect();
        let lb: BTreeSet<u8> = b.iter().map(|p| v.frame(1).unwrap().value_at(p).unwrap().level()).collect();
        let q = CrossFrameQuery::LocationValue { a: (0, &a), b: (1, &b), tol: 0 };
        assert_eq!(cross_frame_adjacent(&v, q).unwrap(), la.intersection(&lb).next().is_some());
    }
}

#[test]
fn persistence_matches_per_frame_predicate() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let e = Extent::new(8, 8);
    let bins = ValueBin::defaults();
    for _ in 0..100 {
        let palette = [0u8, 0, 60, 200, 255, 255];
        let buffers: Vec<Vec<u8>> = (0..8)
            .map(|_| {
                let l = palette[rng.gen_range(0..palette.len())];
                let m = if rng.gen_bool(0.2) { palette[rng.gen_range(0..palette.len())] } else { l };
                (0..64).map(|i| if i % 9 == 0 { m } else { l }).collect()
            })
            .collect();
        let v = Video::from_levels(e, buffers, 5.0).unwrap();
        let track = random_track(&mut rng, 3, e, 8);
        let got = persistence_diagram(&v, std::slice::from_ref(&track), &bins).unwrap();
        for bin in &bins {
            let pred: Vec<bool> = (0..8)
                .map(|t| {
                    let s = track.slice(t).unwrap();
                    !s.is_empty() && s.iter().all(|p| bin.contains(v.frame(t).unwrap().value_at(p).unwrap().level()))
                })
                .collect();
            let mut covered = vec![false; 8];
            for iv in got.iter().filter(|i| i.bin == bin.label()) {
                covered[iv.birth..=iv.death].iter_mut().for_each(|c| *c = true);
                // Maximal: neighbors outside the run fail the predicate.
                assert!(iv.birth == 0 || !pred[iv.birth - 1]);
                assert!(iv.death == 7 || !pred[iv.death + 1]);
                assert_eq!(iv.birth_s, iv.birth as f64 / 5.0);
            }
            assert_eq!(covered, pred);
        }
        for (i, x) in got.iter().enumerate() {
            for y in &got[i + 1..] {
                if x.bin != y.bin {
                    assert!(x.death < y.birth || y.death < x.birth);
                }
            }
        }
    }
}
