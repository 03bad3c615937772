//! Synthetic scenes with ground-truth tracks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use tdt_core::temporal::TrackedRegion;
use tdt_core::{Extent, Point, Region, Video};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Shape {
    /// Axis-aligned rectangle anchored at its top-left cell.
    Rectangle { width: u32, height: u32 },
    /// Upright triangle with `size` rows; row `r` spans `2r + 1` cells
    /// centered under the apex. Anchored at the top-left of its bounding box.
    Triangle { size: u32 },
}

impl Shape {
    pub fn cells(self, anchor: Point) -> Vec<Point> {
        match self {
            Shape::Rectangle { width, height } => (0..height as i32)
                .flat_map(|dy| (0..width as i32).map(move |dx| anchor.offset(dx, dy)))
                .collect(),
            Shape::Triangle { size } => {
                let s = size as i32;
                (0..s)
                    .flat_map(|r| (s - 1 - r..=s - 1 + r).map(move |dx| anchor.offset(dx, r)))
                    .collect()
            }
        }
    }
}

/// One shape drawn at a level, with a per-frame anchor or `None` when absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeTrack {
    pub shape: Shape,
    pub level: u8,
    pub positions: Vec<Option<(i32, i32)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub width: u32,
    pub height: u32,
    pub frames: usize,
    pub fps: f64,
    #[serde(default)]
    pub background: u8,
    /// Later shapes overdraw earlier ones.
    pub shapes: Vec<ShapeTrack>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedScene {
    pub video: Video,
    /// One track per shape (id = shape index), holding its visible cells.
    pub ground_truth: Vec<TrackedRegion>,
}

impl SceneSpec {
    pub fn extent(&self) -> Extent {
        Extent::new(self.width, self.height)
    }

    fn anchor(&self, shape: usize, t: usize) -> Option<Point> {
        self.shapes[shape]
            .positions
            .get(t)
            .copied()
            .flatten()
            .map(Point::from)
    }

    /// Black triangle in the first frame only; a gray triangle drifting
    /// right through the remaining three frames. White background.
    pub fn fig4() -> Self {
        SceneSpec {
            width: 48,
            height: 24,
            frames: 4,
            fps: 1.0,
            background: 255,
            shapes: vec![
                ShapeTrack {
                    shape: Shape::Triangle { size: 6 },
                    level: 0,
                    positions: vec![Some((3, 8)), None, None, None],
                },
                ShapeTrack {
                    shape: Shape::Triangle { size: 6 },
                    level: 128,
                    positions: vec![None, Some((14, 8)), Some((20, 8)), Some((26, 8))],
                },
            ],
        }
    }

    /// A 2x2 white square on black, stepping (+2, +1) per frame over 8
    /// frames of 64x64.
    pub fn moving_square() -> Self {
        SceneSpec {
            width: 64,
            height: 64,
            frames: 8,
            fps: 1.0,
            background: 0,
            shapes: vec![ShapeTrack {
                shape: Shape::Rectangle { width: 2, height: 2 },
                level: 255,
                positions: (0..8).map(|t| Some((10 + 2 * t, 20 + t))).collect(),
            }],
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "fig4" => Some(SceneSpec::fig4()),
            "moving-square" => Some(SceneSpec::moving_square()),
            _ => None,
        }
    }
}

/// Renders the scene and records each shape's visible cells per frame.
pub fn generate_scene(spec: &SceneSpec) -> Result<GeneratedScene> {
    let extent = spec.extent();
    if extent.area() == 0 || spec.frames == 0 {
        return Err(Error::Invalid("scene needs a nonempty extent and at least one frame".into()));
    }
    let mut buffers = Vec::with_capacity(spec.frames);
    let mut visible: Vec<Vec<Region>> = vec![Vec::with_capacity(spec.frames); spec.shapes.len()];
    for t in 0..spec.frames {
        let mut levels = vec![spec.background; extent.area()];
        let mut owner: Vec<Option<usize>> = vec![None; extent.area()];
        for (i, track) in spec.shapes.iter().enumerate() {
            let Some(anchor) = spec.anchor(i, t) else { continue };
            for p in track.shape.cells(anchor) {
                if !extent.contains(p) {
                    return Err(Error::ShapeOutOfExtent {
                        shape: i,
                        frame: t,
                        width: spec.width,
                        height: spec.height,
                    });
                }
                let k = p.y as usize * spec.width as usize + p.x as usize;
                levels[k] = track.level;
                owner[k] = Some(i);
            }
        }
        for (i, slices) in visible.iter_mut().enumerate() {
            let cells = extent.points().zip(&owner).filter_map(|(p, o)| (*o == Some(i)).then_some(p));
            slices.push(Region::new(extent, cells)?);
        }
        buffers.push(levels);
    }
    let video = Video::from_levels(extent, buffers, spec.fps)?;
    let ground_truth = visible
        .into_iter()
        .enumerate()
        .map(|(i, slices)| TrackedRegion::new(i as u32, slices))
        .collect::<tdt_core::Result<Vec<_>>>()?;
    Ok(GeneratedScene { video, ground_truth })
}

type DerivativeField = HashMap<(i32, i32), i32>;

/// Forward-difference fields of a frame made of non-overlapping rectangles,
/// derived from the rectangle edges alone.
fn rectangle_derivatives(spec: &SceneSpec, t: usize) -> Result<(DerivativeField, DerivativeField)> {
    let mut dx = DerivativeField::new();
    let mut dy = DerivativeField::new();
    let bg = i32::from(spec.background);
    let mut rects = Vec::new();
    for (i, track) in spec.shapes.iter().enumerate() {
        let Some(a) = spec.anchor(i, t) else { continue };
        let Shape::Rectangle { width, height } = track.shape else {
            return Err(Error::Invalid("analytic change mask needs rectangles only".into()));
        };
        let (x0, y0, x1, y1) = (a.x, a.y, a.x + width as i32, a.y + height as i32);
        if rects
            .iter()
            .any(|&(u0, v0, u1, v1)| x0 < u1 && u0 < x1 && y0 < v1 && v0 < y1)
        {
            return Err(Error::Invalid("analytic change mask needs non-overlapping rectangles".into()));
        }
        rects.push((x0, y0, x1, y1));
        let step = i32::from(track.level) - bg;
        // Entering the rectangle from the left/top raises the level by `step`,
        // leaving it on the right/bottom lowers it.
        for y in y0..y1 {
            *dx.entry((x0 - 1, y)).or_default() += step;
            *dx.entry((x1 - 1, y)).or_default() -= step;
        }
        for x in x0..x1 {
            *dy.entry((x, y0 - 1)).or_default() += step;
            *dy.entry((x, y1 - 1)).or_default() -= step;
        }
    }
    dx.retain(|_, v| *v != 0);
    dy.retain(|_, v| *v != 0);
    Ok((dx, dy))
}

/// Cells of frame `t` whose forward differences change between `t` and
/// `t + 1`, excluding the last row and column.
pub fn analytic_change_mask(spec: &SceneSpec, t: usize) -> Result<Region> {
    if t + 1 >= spec.frames {
        return Err(tdt_core::Error::LastFrame(t).into());
    }
    let (dx0, dy0) = rectangle_derivatives(spec, t)?;
    let (dx1, dy1) = rectangle_derivatives(spec, t + 1)?;
    let (w, h) = (spec.width as i32, spec.height as i32);
    let changed = |a: &DerivativeField, b: &DerivativeField| -> Vec<(i32, i32)> {
        a.keys()
            .chain(b.keys())
            .filter(|k| a.get(k) != b.get(k))
            .copied()
            .collect()
    };
    let cells = changed(&dx0, &dx1)
        .into_iter()
        .chain(changed(&dy0, &dy1))
        .filter(|&(x, y)| x >= 0 && y >= 0 && x < w - 1 && y < h - 1)
        .map(Point::from);
    Ok(Region::new(spec.extent(), cells)?)
}
