//! Value-class persistence intervals of tracked regions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frame::Video;
use crate::temporal::track::TrackedRegion;

/// An inclusive range of quantized levels with a label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValueBin {
    label: String,
    lo: u8,
    hi: u8,
}

impl ValueBin {
    pub fn new(label: impl Into<String>, lo: u8, hi: u8) -> Result<Self> {
        let label = label.into();
        if lo > hi {
            return Err(Error::InvalidBin(format!("{label}: {lo} > {hi}")));
        }
        Ok(ValueBin { label, lo, hi })
    }

    pub fn black() -> Self {
        ValueBin { label: "black".into(), lo: 0, hi: 0 }
    }

    pub fn gray() -> Self {
        ValueBin { label: "gray".into(), lo: 1, hi: 254 }
    }

    pub fn white() -> Self {
        ValueBin { label: "white".into(), lo: 255, hi: 255 }
    }

    /// Black `{0}`, gray `(0, 255)` and white `{255}`.
    pub fn defaults() -> Vec<ValueBin> {
        vec![ValueBin::black(), ValueBin::gray(), ValueBin::white()]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn range(&self) -> (u8, u8) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, level: u8) -> bool {
        (self.lo..=self.hi).contains(&level)
    }

    fn overlaps(&self, other: &ValueBin) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Parses a comma-separated list such as `black,gray,white` or `0-9,10-99`.
    pub fn parse_list(s: &str) -> Result<Vec<ValueBin>> {
        s.split(',').map(|item| item.trim().parse()).collect()
    }
}

impl FromStr for ValueBin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "black" => return Ok(ValueBin::black()),
            "gray" | "grey" => return Ok(ValueBin::gray()),
            "white" => return Ok(ValueBin::white()),
            _ => {}
        }
        let parse = |v: &str| v.trim().parse::<u8>().map_err(|_| Error::InvalidBin(s.to_string()));
        match s.split_once('-') {
            Some((lo, hi)) => ValueBin::new(s, parse(lo)?, parse(hi)?),
            None => {
                let l = parse(s)?;
                ValueBin::new(s, l, l)
            }
        }
    }
}

impl fmt::Display for ValueBin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// A maximal run of frames during which every cell of a track lies in one bin.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceInterval {
    pub track: u32,
    pub bin: String,
    pub birth: usize,
    pub death: usize,
    /// Elapsed time of the birth frame.
    pub birth_s: f64,
    /// Elapsed time of the death frame.
    pub death_s: f64,
}

impl PersistenceInterval {
    pub fn frames(&self) -> usize {
        self.death - self.birth + 1
    }
}

/// Emits, per track and bin, the maximal runs of frames `t` at which the
/// track is present and all of its cells have levels in the bin.
///
/// Output is ordered by track (input order), then bin (input order), then
/// birth.
pub fn persistence_diagram(
    video: &Video,
    tracks: &[TrackedRegion],
    bins: &[ValueBin],
) -> Result<Vec<PersistenceInterval>> {
    for (i, a) in bins.iter().enumerate() {
        if let Some(b) = bins[i + 1..].iter().find(|b| a.overlaps(b)) {
            return Err(Error::OverlappingBins(a.label.clone(), b.label.clone()));
        }
    }
    let mut out = Vec::new();
    for track in tracks {
        // Bin of each frame's slice, when it is present and uniform.
        let mut per_frame: Vec<Option<usize>> = Vec::with_capacity(track.frames());
        for (t, slice) in track.slices().iter().enumerate() {
            if slice.is_empty() {
                per_frame.push(None);
                continue;
            }
            let frame = video.frame(t)?;
            let mut lo = u8::MAX;
            let mut hi = u8::MIN;
            for p in slice.iter() {
                let l = frame.value_at(p)?.level();
                lo = lo.min(l);
                hi = hi.max(l);
            }
            per_frame.push(bins.iter().position(|b| b.contains(lo) && b.contains(hi)));
        }
        for (k, bin) in bins.iter().enumerate() {
            let mut t = 0;
            while t < per_frame.len() {
                if per_frame[t] != Some(k) {
                    t += 1;
                    continue;
                }
                let birth = t;
                while t + 1 < per_frame.len() && per_frame[t + 1] == Some(k) {
                    t += 1;
                }
                out.push(PersistenceInterval {
                    track: track.id(),
                    bin: bin.label.clone(),
                    birth,
                    death: t,
                    birth_s: video.seconds(birth),
                    death_s: video.seconds(t),
                });
                t += 1;
            }
        }
    }
    Ok(out)
}
