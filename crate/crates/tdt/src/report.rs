//! JSON report documents with canonical serialization.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tdt_core::temporal::{PersistenceInterval, SegmentationMask, TrackedRegion};
use tdt_core::{Extent, Point, Region};

use crate::error::{Error, Result};

pub const TOOL: &str = "tdt";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn cells_of(r: &Region) -> Vec<[i32; 2]> {
    r.iter().map(|p| [p.x, p.y]).collect()
}

fn region_of(extent: Extent, cells: &[[i32; 2]]) -> Result<Region> {
    Ok(Region::new(extent, cells.iter().map(|&[x, y]| Point::new(x, y)))?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackRecord {
    pub id: u32,
    pub birth: usize,
    pub death: usize,
    /// Present frames only.
    pub slices: BTreeMap<usize, Vec<[i32; 2]>>,
}

impl TrackRecord {
    /// `None` for a track that is never present.
    pub fn from_track(a: &TrackedRegion) -> Option<Self> {
        Some(TrackRecord {
            id: a.id(),
            birth: a.birth()?,
            death: a.death()?,
            slices: a.present_times().map(|t| (t, cells_of(&a.slices()[t]))).collect(),
        })
    }

    pub fn to_track(&self, extent: Extent, frames: usize) -> Result<TrackedRegion> {
        let mut slices = vec![Region::empty(extent); frames];
        for (&t, cells) in &self.slices {
            let slot = slices
                .get_mut(t)
                .ok_or_else(|| Error::Invalid(format!("track {} has a slice at frame {t} of {frames}", self.id)))?;
            *slot = region_of(extent, cells)?;
        }
        Ok(TrackedRegion::new(self.id, slices)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskRecord {
    pub t: usize,
    pub foreground: Vec<[i32; 2]>,
    /// Connected components of the foreground under the chosen scheme.
    pub components: usize,
}

impl MaskRecord {
    pub fn new(mask: &SegmentationMask, components: usize) -> Self {
        MaskRecord {
            t: mask.t,
            foreground: cells_of(&mask.foreground),
            components,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub kind: String,
    pub a: u32,
    pub b: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub holds: bool,
    /// Frames at which the relation is witnessed.
    pub times: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub track: u32,
    pub bin: String,
    pub birth: usize,
    pub death: usize,
    pub birth_s: f64,
    pub death_s: f64,
}

impl From<&PersistenceInterval> for IntervalRecord {
    fn from(i: &PersistenceInterval) -> Self {
        IntervalRecord {
            track: i.track,
            bin: i.bin.clone(),
            birth: i.birth,
            death: i.death,
            birth_s: i.birth_s,
            death_s: i.death_s,
        }
    }
}

impl From<&IntervalRecord> for PersistenceInterval {
    fn from(i: &IntervalRecord) -> Self {
        PersistenceInterval {
            track: i.track,
            bin: i.bin.clone(),
            birth: i.birth,
            death: i.death,
            birth_s: i.birth_s,
            death_s: i.death_s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanRecord {
    pub cycle: Vec<[i32; 2]>,
    pub interior: Vec<[i32; 2]>,
    pub exterior_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub frames: usize,
    pub fps: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u32>,
    #[serde(default)]
    pub tracks: Vec<TrackRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub masks: Vec<MaskRecord>,
    #[serde(default)]
    pub relations: Vec<RelationRecord>,
    #[serde(default)]
    pub intervals: Vec<IntervalRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jordan: Option<JordanRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u32>,
}

impl Report {
    pub fn new(frames: usize, fps: f64) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            input_digest: None,
            frames,
            fps,
            width: None,
            height: None,
            tracks: Vec::new(),
            masks: Vec::new(),
            relations: Vec::new(),
            intervals: Vec::new(),
            jordan: None,
            checks: Vec::new(),
            seed: None,
            size: None,
        }
    }

    pub fn with_extent(mut self, e: Extent) -> Self {
        self.width = Some(e.width);
        self.height = Some(e.height);
        self
    }

    pub fn extent(&self) -> Option<Extent> {
        Some(Extent::new(self.width?, self.height?))
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Tracks rebuilt against the recorded extent and frame count.
    pub fn tracked_regions(&self) -> Result<Vec<TrackedRegion>> {
        let extent = self
            .extent()
            .ok_or_else(|| Error::Invalid("report has no width/height".into()))?;
        self.tracks.iter().map(|r| r.to_track(extent, self.frames)).collect()
    }

    /// Pretty JSON with lexicographically sorted keys and a trailing newline.
    pub fn to_canonical_json(&self) -> Result<String> {
        to_canonical_json(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Report::from_json(&s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_canonical_json()?).map_err(|e| Error::io(path, e))
    }
}

/// Routes through `serde_json::Value`, whose object map is ordered by key.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
