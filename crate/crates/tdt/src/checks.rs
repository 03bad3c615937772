//! Randomized and exhaustive invariant checks over small grids.
//!
//! Every check draws from its own ChaCha stream keyed by the run seed and
//! the check name, so reports are reproducible per check.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tdt_core::temporal::{
    check_temporal_continuity, gap_distance, lifespans_overlap, persistence_diagram, segment,
    temporally_metric_near, temporally_near, TrackedRegion, ValueBin,
};
use tdt_core::lattice::shared_corners;
use tdt_core::{
    boundary_corners, cat_number, check_kappa_continuity, connected_components, is_connected,
    jordan_partition, map_region, near_discrete, subimages_adjacent, voxels_adjacent,
    AdjacencyScheme, Axis, Extent, Frame, OneCycle, Point, Region, TimeStamp, Video, VoxelAdjacency,
};

use crate::error::{Error, Result};
use crate::report::{CheckRecord, Report};

pub const MAX_SIZE: u32 = 32;
const MIN_SIZE: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Core,
    Topology,
    Temporal,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

struct Outcome {
    cases: usize,
    counterexample: Option<Value>,
}

impl Outcome {
    fn pass(cases: usize) -> Self {
        Outcome { cases, counterexample: None }
    }

    fn fail(cases: usize, cx: Value) -> Self {
        Outcome { cases, counterexample: Some(cx) }
    }
}

type CheckFn = fn(&mut ChaCha8Rng, u32) -> Outcome;

const CORE: &[(&str, CheckFn)] = &[
    ("adjacency_equivalence", |_, n| {
        adjacency_outcome(n, |p, q| voxels_adjacent(p, q, VoxelAdjacency::Boundary))
    }),
    ("adjacency_decomposition", adjacency_decomposition),
    ("corner_sharing", corner_sharing),
    ("derivative_zero_iff_constant", derivative_zero_iff_constant),
    ("derivative_telescopes", derivative_telescopes),
];

const TOPOLOGY: &[(&str, CheckFn)] = &[
    ("components_match_flood_fill", components_match_flood_fill),
    ("continuity_preserves_connectedness", continuity_preserves_connectedness),
    ("continuity_detects_tearing", continuity_detects_tearing),
    ("jordan_rectangles", jordan_rectangles),
    ("cat_number_minimal", cat_number_minimal),
];

const TEMPORAL: &[(&str, CheckFn)] = &[
    ("gap_distance_oracle", gap_distance_oracle),
    ("proximity_implications", proximity_implications),
    ("segmentation_formula", segmentation_formula),
    ("temporal_continuity_translations", temporal_continuity_translations),
    ("temporal_continuity_dilation", temporal_continuity_dilation),
    ("persistence_maximal_runs", persistence_maximal_runs),
];

fn fnv1a(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(name))
}

fn record(suite: &str, name: &str, o: Outcome) -> CheckRecord {
    CheckRecord {
        suite: suite.into(),
        name: name.into(),
        cases: o.cases,
        passed: o.counterexample.is_none(),
        counterexample: o.counterexample,
    }
}

/// Runs the selected suites on `size`×`size` grids.
pub fn run_checks(suite: Suite, size: u32, seed: u64) -> Result<Report> {
    if !(MIN_SIZE..=MAX_SIZE).contains(&size) {
        return Err(Error::Invalid(format!(
            "size must be in {MIN_SIZE}..={MAX_SIZE}, got {size}"
        )));
    }
    let mut report = Report::new(0, 1.0);
    report.seed = Some(seed);
    report.size = Some(size);
    for (label, which, table) in [
        ("core", Suite::Core, CORE),
        ("topology", Suite::Topology, TOPOLOGY),
        ("temporal", Suite::Temporal, TEMPORAL),
    ] {
        if !suite.includes(which) {
            continue;
        }
        for (name, check) in table {
            let mut rng = rng_for(seed, name);
            report.checks.push(record(label, name, check(&mut rng, size)));
        }
    }
    Ok(report)
}

/// Compares `predicate` with Chebyshev distance 1 over every ordered pair of
/// distinct cells of a `size`×`size` grid.
pub fn adjacency_equivalence(size: u32, predicate: impl Fn(Point, Point) -> bool) -> CheckRecord {
    record("core", "adjacency_equivalence", adjacency_outcome(size, predicate))
}

fn pt(p: Point) -> Value {
    json!([p.x, p.y])
}

fn cells_json(r: &Region) -> Value {
    Value::Array(r.iter().map(pt).collect())
}

fn adjacency_outcome(n: u32, predicate: impl Fn(Point, Point) -> bool) -> Outcome {
    let e = Extent::new(n, n);
    let mut cases = 0;
    for p in e.points() {
        for q in e.points() {
            if p == q {
                continue;
            }
            cases += 1;
            let expected = p.x.abs_diff(q.x).max(p.y.abs_diff(q.y)) == 1;
            let got = predicate(p, q);
            if got != expected {
                return Outcome::fail(
                    cases,
                    json!({"p": pt(p), "q": pt(q), "predicate": got, "chebyshev_one": expected}),
                );
            }
        }
    }
    Outcome::pass(cases)
}

fn window(p: Point, r: i32) -> impl Iterator<Item = Point> {
    (-r..=r).flat_map(move |dy| (-r..=r).map(move |dx| p.offset(dx, dy)))
}

fn adjacency_decomposition(_: &mut ChaCha8Rng, n: u32) -> Outcome {
    let mut cases = 0;
    for p in Extent::new(n, n).points() {
        for q in window(p, 2) {
            cases += 1;
            let [c, r, d, b] = VoxelAdjacency::ALL.map(|s| voxels_adjacent(p, q, s));
            let exclusive = u8::from(c) + u8::from(r) + u8::from(d) <= 1;
            if b != (c || r || d) || !exclusive {
                return Outcome::fail(
                    cases,
                    json!({"p": pt(p), "q": pt(q), "column": c, "row": r, "diagonal": d, "boundary": b}),
                );
            }
        }
    }
    Outcome::pass(cases)
}

fn corner_sharing(_: &mut ChaCha8Rng, n: u32) -> Outcome {
    let mut cases = 0;
    for p in Extent::new(n, n).points() {
        let corners = boundary_corners(p);
        let distinct: BTreeSet<_> = corners.iter().collect();
        cases += 1;
        if distinct.len() != 4 || corners.iter().any(|h| !h.is_corner() || h.is_lattice()) {
            return Outcome::fail(cases, json!({"p": pt(p), "corners": format!("{corners:?}")}));
        }
        for q in window(p, 2) {
            cases += 1;
            let (dx, dy) = (p.x.abs_diff(q.x), p.y.abs_diff(q.y));
            let expected = match (dx, dy) {
                (0, 0) => 4,
                (1, 0) | (0, 1) => 2,
                (1, 1) => 1,
                _ => 0,
            };
            let got = shared_corners(p, q);
            if got != expected {
                return Outcome::fail(cases, json!({"p": pt(p), "q": pt(q), "shared": got, "expected": expected}));
            }
        }
    }
    Outcome::pass(cases)
}

fn random_frame(rng: &mut ChaCha8Rng, e: Extent, levels: &[u8]) -> Frame {
    Frame::from_fn(e, TimeStamp::at(0, 1.0), |_| *levels.choose(rng).expect("levels")).expect("valid frame")
}

fn derivative_zero_iff_constant(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let cases = 100;
    for case in 0..cases {
        let f = if case % 2 == 0 {
            let l: u8 = rng.gen();
            random_frame(rng, e, &[l])
        } else {
            let k = rng.gen_range(1..=3);
            let pool: Vec<u8> = (0..k).map(|_| rng.gen()).collect();
            random_frame(rng, e, &pool)
        };
        let all_zero = e.points().all(|p| {
            [Axis::X, Axis::Y]
                .iter()
                .all(|&a| f.partial_derivative(p, a).map_or(true, |d| d == 0))
        });
        let constant = f.levels().iter().all(|&l| l == f.levels()[0]);
        if all_zero != constant {
            return Outcome::fail(case + 1, json!({"levels": f.levels(), "all_zero": all_zero}));
        }
    }
    Outcome::pass(cases)
}

fn derivative_telescopes(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let pool: Vec<u8> = (0..=255).collect();
    let cases = 50;
    let last = n as i32 - 1;
    for case in 0..cases {
        let f = random_frame(rng, e, &pool);
        let level = |x, y| i32::from(f.levels()[(y * n as i32 + x) as usize]);
        for k in 0..n as i32 {
            let row: i32 = (0..last)
                .map(|x| i32::from(f.partial_derivative(Point::new(x, k), Axis::X).unwrap_or(i16::MAX)))
                .sum();
            let col: i32 = (0..last)
                .map(|y| i32::from(f.partial_derivative(Point::new(k, y), Axis::Y).unwrap_or(i16::MAX)))
                .sum();
            if row != level(last, k) - level(0, k) || col != level(k, last) - level(k, 0) {
                return Outcome::fail(case + 1, json!({"levels": f.levels(), "line": k}));
            }
        }
    }
    Outcome::pass(cases)
}

fn random_mask(rng: &mut ChaCha8Rng, e: Extent) -> Region {
    let density = rng.gen_range(0.2..0.7);
    let mask: Vec<bool> = (0..e.area()).map(|_| rng.gen_bool(density)).collect();
    Region::from_mask(e, &mask).expect("mask")
}

fn linked(scheme: AdjacencyScheme, p: Point, q: Point) -> bool {
    let (dx, dy) = (p.x.abs_diff(q.x), p.y.abs_diff(q.y));
    match scheme {
        AdjacencyScheme::Four => dx + dy == 1,
        AdjacencyScheme::Eight => dx.max(dy) == 1,
    }
}

/// Breadth-first labeling over a cell list, quadratic in region size.
fn flood_fill(r: &Region, scheme: AdjacencyScheme) -> BTreeSet<BTreeSet<Point>> {
    let cells: Vec<Point> = r.iter().collect();
    let mut seen = vec![false; cells.len()];
    let mut out = BTreeSet::new();
    for start in 0..cells.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            comp.insert(cells[i]);
            for j in 0..cells.len() {
                if !seen[j] && linked(scheme, cells[i], cells[j]) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        out.insert(comp);
    }
    out
}

const SCHEMES: [AdjacencyScheme; 2] = [AdjacencyScheme::Four, AdjacencyScheme::Eight];

fn components_match_flood_fill(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let cases = 60;
    for case in 0..cases {
        let r = random_mask(rng, e);
        if r.is_empty() {
            continue;
        }
        for scheme in SCHEMES {
            let got: BTreeSet<BTreeSet<Point>> = connected_components(&r, scheme)
                .expect("nonempty")
                .into_iter()
                .map(|c| c.cells().clone())
                .collect();
            if got != flood_fill(&r, scheme) {
                return Outcome::fail(case + 1, json!({"scheme": scheme.degree(), "mask": cells_json(&r)}));
            }
        }
    }
    Outcome::pass(cases)
}

/// A walk on `0..n` with steps in {-1, 0, 1}.
fn lipschitz_walk(rng: &mut ChaCha8Rng, n: u32) -> Vec<i32> {
    let mut v = rng.gen_range(0..n as i32);
    (0..n)
        .map(|_| {
            let cur = v;
            v = (v + rng.gen_range(-1..=1)).clamp(0, n as i32 - 1);
            cur
        })
        .collect()
}

/// Grows a connected region by attaching random neighbors.
fn grow_region(rng: &mut ChaCha8Rng, e: Extent, scheme: AdjacencyScheme, max: usize) -> Region {
    let start = Point::new(rng.gen_range(0..e.width as i32), rng.gen_range(0..e.height as i32));
    let mut cells = vec![start];
    let target = rng.gen_range(1..=max);
    let mut tries = 0;
    while cells.len() < target && tries < 20 * max {
        tries += 1;
        let base = *cells.choose(rng).expect("nonempty");
        let (dx, dy) = *scheme.offsets().choose(rng).expect("offsets");
        let q = base.offset(dx, dy);
        if e.contains(q) && !cells.contains(&q) {
            cells.push(q);
        }
    }
    Region::new(e, cells).expect("in extent")
}

fn continuity_preserves_connectedness(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let maps = 30;
    let mut cases = 0;
    for _ in 0..maps {
        let (a, b) = (lipschitz_walk(rng, n), lipschitz_walk(rng, n));
        let f = |p: Point| Some(Point::new(a[p.x as usize], b[p.y as usize]));
        for scheme in SCHEMES {
            let verdict = check_kappa_continuity(f, e, e, scheme).expect("total map");
            if !verdict.holds() {
                return Outcome::fail(cases, json!({"a": a, "b": b, "scheme": scheme.degree(), "reason": "map reported discontinuous"}));
            }
            for _ in 0..10 {
                cases += 1;
                let r = grow_region(rng, e, scheme, 12);
                let img = map_region(f, &r, e).expect("in extent");
                if !is_connected(&img, scheme).expect("nonempty") {
                    return Outcome::fail(
                        cases,
                        json!({"a": a, "b": b, "scheme": scheme.degree(), "region": cells_json(&r)}),
                    );
                }
            }
        }
    }
    Outcome::pass(cases)
}

fn continuity_detects_tearing(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let wide = Extent::new(n + 2, n);
    let cases = 20;
    for case in 0..cases {
        let c = rng.gen_range(1..n as i32);
        let scheme = SCHEMES[case % 2];
        let tear = |p: Point| Point::new(if p.x >= c { p.x + 2 } else { p.x }, p.y);
        let verdict = check_kappa_continuity(|p| Some(tear(p)), e, wide, scheme).expect("total");
        let ok = verdict.witness().is_some_and(|(a, b)| {
            let (p, q) = (a.min_cell().expect("cell"), b.min_cell().expect("cell"));
            linked(scheme, p, q) && !linked(scheme, tear(p), tear(q)) && (p.x < c) != (q.x < c)
        });
        if !ok {
            return Outcome::fail(case + 1, json!({"column": c, "scheme": scheme.degree(), "witness": verdict.holds()}));
        }
    }
    Outcome::pass(cases)
}

fn jordan_rectangles(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let cases = 40;
    let m = n as i32;
    for case in 0..cases {
        let x0 = rng.gen_range(0..m - 2);
        let y0 = rng.gen_range(0..m - 2);
        let x1 = rng.gen_range(x0 + 2..m);
        let y1 = rng.gen_range(y0 + 2..m);
        let cycle = OneCycle::rectangle(x0, y0, x1, y1).expect("ring");
        let part = match jordan_partition(&cycle, e) {
            Ok(p) => p,
            Err(err) => return Outcome::fail(case + 1, json!({"rect": [x0, y0, x1, y1], "error": err.to_string()})),
        };
        let expected = ((x1 - x0 - 1) * (y1 - y0 - 1)) as usize;
        let covered = part.interior.len() + part.exterior.len() + cycle.len();
        if part.interior.len() != expected
            || part.interior.intersects(&part.exterior)
            || covered != e.area()
            || !is_connected(&part.interior, AdjacencyScheme::Four).unwrap_or(false)
        {
            return Outcome::fail(
                case + 1,
                json!({"rect": [x0, y0, x1, y1], "interior": part.interior.len(), "expected": expected}),
            );
        }
    }
    Outcome::pass(cases)
}

/// Smallest number of blocks in a partition of `cells` into connected,
/// level-constant blocks, by exhaustive search over set partitions.
fn brute_cover(cells: &[Point], level: impl Fn(Point) -> u8, scheme: AdjacencyScheme) -> usize {
    fn valid(block: &[Point], level: &dyn Fn(Point) -> u8, scheme: AdjacencyScheme) -> bool {
        let l = level(block[0]);
        if block.iter().any(|&p| level(p) != l) {
            return false;
        }
        let mut reached = vec![false; block.len()];
        reached[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..block.len() {
                if !reached[j] && linked(scheme, block[i], block[j]) {
                    reached[j] = true;
                    stack.push(j);
                }
            }
        }
        reached.iter().all(|&r| r)
    }
    fn go(
        k: usize,
        cells: &[Point],
        blocks: &mut Vec<Vec<Point>>,
        best: &mut usize,
        level: &dyn Fn(Point) -> u8,
        scheme: AdjacencyScheme,
    ) {
        if blocks.len() >= *best {
            return;
        }
        if k == cells.len() {
            if blocks.iter().all(|b| valid(b, level, scheme)) {
                *best = blocks.len();
            }
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(cells[k]);
            go(k + 1, cells, blocks, best, level, scheme);
            blocks[i].pop();
        }
        blocks.push(vec![cells[k]]);
        go(k + 1, cells, blocks, best, level, scheme);
        blocks.pop();
    }
    let mut best = cells.len() + 1;
    go(0, cells, &mut Vec::new(), &mut best, &level, scheme);
    best
}

fn cat_number_minimal(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let cases = 40;
    for case in 0..cases {
        let frame = random_frame(rng, e, &[0, 128, 255]);
        let scheme = SCHEMES[case % 2];
        let r = grow_region(rng, e, AdjacencyScheme::Eight, 7);
        let got = cat_number(&r, &frame, scheme).expect("nonempty").count;
        let cells: Vec<Point> = r.iter().collect();
        let want = brute_cover(&cells, |p| frame.value_at(p).expect("in extent").level(), scheme);
        if got != want {
            return Outcome::fail(
                case + 1,
                json!({"region": cells_json(&r), "scheme": scheme.degree(), "got": got, "minimal": want}),
            );
        }
    }
    Outcome::pass(cases)
}

fn random_blob(rng: &mut ChaCha8Rng, e: Extent) -> Region {
    let c = Point::new(rng.gen_range(0..e.width as i32), rng.gen_range(0..e.height as i32));
    let mut cells: Vec<Point> = window(c, 2).filter(|&p| e.contains(p) && rng.gen_bool(0.4)).collect();
    cells.push(c);
    Region::new(e, cells).expect("in extent")
}

fn random_track(rng: &mut ChaCha8Rng, id: u32, e: Extent, frames: usize) -> TrackedRegion {
    loop {
        let slices: Vec<Region> = (0..frames)
            .map(|_| if rng.gen_bool(0.7) { random_blob(rng, e) } else { Region::empty(e) })
            .collect();
        if slices.iter().any(|s| !s.is_empty()) {
            return TrackedRegion::new(id, slices).expect("uniform extent");
        }
    }
}

fn gap_distance_oracle(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let cases = 100;
    for case in 0..cases {
        let (a, b) = (random_blob(rng, e), random_blob(rng, e));
        let want = a
            .iter()
            .flat_map(|p| b.iter().map(move |q| p.x.abs_diff(q.x).max(p.y.abs_diff(q.y))))
            .min()
            .expect("nonempty");
        let got = gap_distance(&a, &b).expect("nonempty").0;
        if got != want {
            return Outcome::fail(case + 1, json!({"a": cells_json(&a), "b": cells_json(&b), "got": got, "want": want}));
        }
    }
    Outcome::pass(cases)
}

fn proximity_implications(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let cases = 80;
    for case in 0..cases {
        let a = random_track(rng, 0, e, 5);
        let b = random_track(rng, 1, e, 5);
        let tnear = temporally_near(&a, &b).is_near();
        let mnear = [0.0, 1.0, 2.0].map(|eps| temporally_metric_near(&a, &b, eps));
        let overlap = lifespans_overlap(&a, &b).expect("present");
        let mut violation = None;
        if tnear && mnear.iter().any(|m| !m) {
            violation = Some("tnear without mnear");
        } else if mnear[0] != tnear {
            violation = Some("mnear(0) differs from tnear");
        } else if tnear && !overlap {
            violation = Some("tnear without overlapping lifespans");
        }
        for t in 0..5 {
            let (sa, sb) = (&a.slices()[t], &b.slices()[t]);
            if sa.is_empty() || sb.is_empty() || violation.is_some() {
                continue;
            }
            if near_discrete(sa, sb).expect("nonempty")
                && !SCHEMES.iter().all(|&s| subimages_adjacent(sa, sb, s).expect("nonempty"))
            {
                violation = Some("near_discrete without adjacency");
            }
        }
        if let Some(v) = violation {
            return Outcome::fail(case + 1, json!({"violation": v, "frames": 5}));
        }
    }
    Outcome::pass(cases)
}

fn random_video(rng: &mut ChaCha8Rng, e: Extent, frames: usize, pool: &[u8]) -> Video {
    let buffers = (0..frames)
        .map(|_| (0..e.area()).map(|_| *pool.choose(rng).expect("pool")).collect())
        .collect();
    Video::from_levels(e, buffers, 1.0).expect("valid video")
}

fn segmentation_formula(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let cases = 30;
    let w = n as usize;
    for case in 0..cases {
        let v = random_video(rng, e, 2, &[10, 11, 12, 14, 20]);
        let tol: u16 = rng.gen_range(0..=4);
        let mask = segment(&v, 0, tol).expect("two frames");
        let (f0, f1) = (v.frames()[0].levels(), v.frames()[1].levels());
        let d = |l: &[u8], i: usize, j: usize| i32::from(l[j]) - i32::from(l[i]);
        for p in e.points() {
            let (x, y) = (p.x as usize, p.y as usize);
            let want = x + 1 < w && y + 1 < w && {
                let i = y * w + x;
                let cx = d(f0, i, i + 1).abs_diff(d(f1, i, i + 1));
                let cy = d(f0, i, i + w).abs_diff(d(f1, i, i + w));
                cx > u32::from(tol) || cy > u32::from(tol)
            };
            if mask.foreground.contains(p) != want || mask.background.contains(p) == want {
                return Outcome::fail(case + 1, json!({"p": pt(p), "tol": tol, "foreground": !want}));
            }
        }
    }
    Outcome::pass(cases)
}

fn temporal_continuity_translations(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let big = Extent::new(n + 3, n + 3);
    let frames = 4;
    let cases = 15;
    for case in 0..cases {
        let x = random_video(rng, e, frames, &[0, 255]);
        let y = random_video(rng, big, frames, &[0]);
        let tracks: Vec<TrackedRegion> = (0..3).map(|i| random_track(rng, i, e, frames)).collect();
        let (dx, dy) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let identity = check_temporal_continuity(|_, p| Some(p), &x, &x, &tracks, AdjacencyScheme::Eight);
        let shift = check_temporal_continuity(|_, p: Point| Some(p.offset(dx, dy)), &x, &y, &tracks, AdjacencyScheme::Eight);
        for (label, r) in [("identity", identity), ("translation", shift)] {
            let ok = r.as_ref().is_ok_and(|r| {
                r.holds() && r.tnear_preserved.holds() && r.disappearance.holds()
                    && r.mnear_preserved.iter().all(|(_, v)| v.holds())
            });
            if !ok {
                return Outcome::fail(case + 1, json!({"map": label, "shift": [dx, dy]}));
            }
        }
    }
    Outcome::pass(cases)
}

fn temporal_continuity_dilation(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let wide = Extent::new(2 * n, n);
    let frames = 3;
    let x = random_video(rng, e, frames, &[0, 255]);
    let y = random_video(rng, wide, frames, &[0]);
    let py = rng.gen_range(0..n as i32);
    let px = rng.gen_range(0..n as i32 - 1);
    let single = |p: Point| TrackedRegion::new(0, vec![Region::new(e, [p]).expect("in extent"); frames]).expect("track");
    let a = single(Point::new(px, py));
    let b = TrackedRegion::new(1, single(Point::new(px + 1, py)).slices().to_vec()).expect("track");
    let r = check_temporal_continuity(|_, p: Point| Some(Point::new(2 * p.x, p.y)), &x, &y, &[a, b], AdjacencyScheme::Eight)
        .expect("total map");
    match r.continuity.witness() {
        Some(w) if w.a == 0 && w.b == 1 && !w.times.is_empty() => Outcome::pass(1),
        other => Outcome::fail(1, json!({"pair": [pt(Point::new(px, py)), pt(Point::new(px + 1, py))], "witness": format!("{other:?}")})),
    }
}

fn persistence_maximal_runs(rng: &mut ChaCha8Rng, n: u32) -> Outcome {
    let e = Extent::new(n, n);
    let frames = 6;
    let bins = ValueBin::defaults();
    let cases = 40;
    for case in 0..cases {
        let v = random_video(rng, e, frames, &[0, 0, 0, 90, 255, 255, 255]);
        let t = random_track(rng, 7, e, frames);
        let got: Vec<(String, usize, usize)> = persistence_diagram(&v, std::slice::from_ref(&t), &bins)
            .expect("valid bins")
            .into_iter()
            .map(|i| (i.bin, i.birth, i.death))
            .collect();
        let mut want = Vec::new();
        for bin in &bins {
            let inside: Vec<bool> = (0..frames)
                .map(|k| {
                    let s = &t.slices()[k];
                    !s.is_empty() && s.iter().all(|p| bin.contains(v.frames()[k].levels()[(p.y as u32 * n + p.x as u32) as usize]))
                })
                .collect();
            let mut k = 0;
            while k < frames {
                if inside[k] {
                    let start = k;
                    while k + 1 < frames && inside[k + 1] {
                        k += 1;
                    }
                    want.push((bin.label().to_string(), start, k));
                }
                k += 1;
            }
        }
        if got != want {
            return Outcome::fail(case + 1, json!({"got": format!("{got:?}"), "want": format!("{want:?}")}));
        }
    }
    Outcome::pass(cases)
}
