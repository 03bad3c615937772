//! Frames, videos and digital partial derivatives.

use crate::error::{Error, Result};
use crate::lattice::Point;

/// A quantized grayscale value. Level 0 is black, 255 is white.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrayValue(pub u8);

impl GrayValue {
    pub const BLACK: GrayValue = GrayValue(0);
    pub const WHITE: GrayValue = GrayValue(255);

    pub fn level(self) -> u8 {
        self.0
    }

    /// The value mapped into `[0, 1]`.
    pub fn unit(self) -> f64 {
        f64::from(self.0) / 255.0
    }

    pub fn is_black(self) -> bool {
        self.0 == 0
    }

    pub fn is_white(self) -> bool {
        self.0 == 255
    }

    pub fn is_gray(self) -> bool {
        !self.is_black() && !self.is_white()
    }
}

/// Width and height of a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Extent {
    pub width: u32,
    pub height: u32,
}

impl Extent {
    pub const fn new(width: u32, height: u32) -> Self {
        Extent { width, height }
    }

    pub fn contains(self, p: Point) -> bool {
        p.x >= 0 && p.y >= 0 && (p.x as u32) < self.width && (p.y as u32) < self.height
    }

    pub fn area(self) -> usize {
        self.width as usize * self.height as usize
    }

    /// All positions in row-major order.
    pub fn points(self) -> impl Iterator<Item = Point> {
        let (w, h) = (self.width as i32, self.height as i32);
        (0..h).flat_map(move |y| (0..w).map(move |x| Point::new(x, y)))
    }

    pub fn on_border(self, p: Point) -> bool {
        p.x == 0 || p.y == 0 || p.x as u32 + 1 == self.width || p.y as u32 + 1 == self.height
    }

    pub(crate) fn check(self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutOfExtent(p, self.width, self.height))
        }
    }

    pub(crate) fn index(self, p: Point) -> usize {
        p.y as usize * self.width as usize + p.x as usize
    }
}

/// Frame index together with elapsed seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeStamp {
    pub index: usize,
    pub seconds: f64,
}

impl TimeStamp {
    pub fn at(index: usize, fps: f64) -> Self {
        TimeStamp {
            index,
            seconds: index as f64 / fps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// One time-stamped grayscale image, total on its extent.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    extent: Extent,
    time: TimeStamp,
    levels: Vec<u8>,
}

impl Frame {
    /// Builds a frame from row-major levels.
    pub fn new(extent: Extent, time: TimeStamp, levels: Vec<u8>) -> Result<Self> {
        if extent.width == 0 || extent.height == 0 {
            return Err(Error::InvalidFrame("frame extent must be nonempty".into()));
        }
        if levels.len() != extent.area() {
            return Err(Error::InvalidFrame(format!(
                "expected {} levels, got {}",
                extent.area(),
                levels.len()
            )));
        }
        Ok(Frame {
            extent,
            time,
            levels,
        })
    }

    pub fn from_fn(extent: Extent, time: TimeStamp, mut f: impl FnMut(Point) -> u8) -> Result<Self> {
        let levels = extent.points().map(&mut f).collect();
        Frame::new(extent, time, levels)
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn width(&self) -> u32 {
        self.extent.width
    }

    pub fn height(&self) -> u32 {
        self.extent.height
    }

    pub fn time(&self) -> TimeStamp {
        self.time
    }

    /// Row-major level buffer.
    pub fn levels(&self) -> &[u8] {
        &self.levels
    }

    pub fn value_at(&self, p: Point) -> Result<GrayValue> {
        self.extent.check(p)?;
        Ok(GrayValue(self.levels[self.extent.index(p)]))
    }

    pub(crate) fn level_unchecked(&self, p: Point) -> u8 {
        self.levels[self.extent.index(p)]
    }

    /// Forward difference `level(p + axis) - level(p)`.
    ///
    /// Fails with `OutOfExtent` on the last column (x) or last row (y),
    /// where the successor does not exist.
    pub fn partial_derivative(&self, p: Point, axis: Axis) -> Result<i16> {
        self.extent.check(p)?;
        let next = match axis {
            Axis::X => p.offset(1, 0),
            Axis::Y => p.offset(0, 1),
        };
        self.extent.check(next)?;
        Ok(i16::from(self.level_unchecked(next)) - i16::from(self.level_unchecked(p)))
    }

    pub(crate) fn with_time(mut self, time: TimeStamp) -> Self {
        self.time = time;
        self
    }
}

/// A nonempty, time-ordered sequence of equally sized frames.
#[derive(Debug, Clone, PartialEq)]
pub struct Video {
    frames: Vec<Frame>,
    fps: f64,
}

impl Video {
    /// Frame `k` must carry time index `k`; all extents must agree.
    pub fn new(frames: Vec<Frame>, fps: f64) -> Result<Self> {
        if !(fps.is_finite() && fps > 0.0) {
            return Err(Error::InvalidVideo(format!("fps must be positive, got {fps}")));
        }
        let first = frames
            .first()
            .ok_or_else(|| Error::InvalidVideo("a video needs at least one frame".into()))?;
        let extent = first.extent();
        for (k, f) in frames.iter().enumerate() {
            if f.extent() != extent {
                return Err(Error::InvalidVideo(format!(
                    "frame {k} is {}x{}, expected {}x{}",
                    f.width(),
                    f.height(),
                    extent.width,
                    extent.height
                )));
            }
            if f.time().index != k {
                return Err(Error::InvalidVideo(format!(
                    "frame {k} carries time index {}",
                    f.time().index
                )));
            }
        }
        Ok(Video { frames, fps })
    }

    /// Builds a video from row-major level buffers, stamping times from `fps`.
    pub fn from_levels(extent: Extent, buffers: Vec<Vec<u8>>, fps: f64) -> Result<Self> {
        let frames = buffers
            .into_iter()
            .enumerate()
            .map(|(k, levels)| Frame::new(extent, TimeStamp::at(k, fps), levels))
            .collect::<Result<Vec<_>>>()?;
        Video::new(frames, fps)
    }

    /// Restamps arbitrary frames in sequence order.
    pub fn from_frames(frames: Vec<Frame>, fps: f64) -> Result<Self> {
        let frames = frames
            .into_iter()
            .enumerate()
            .map(|(k, f)| f.with_time(TimeStamp::at(k, fps)))
            .collect();
        Video::new(frames, fps)
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn frame(&self, t: usize) -> Result<&Frame> {
        self.frames
            .get(t)
            .ok_or(Error::FrameIndex(t, self.frames.len()))
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn fps(&self) -> f64 {
        self.fps
    }

    pub fn extent(&self) -> Extent {
        self.frames[0].extent()
    }

    pub fn seconds(&self, t: usize) -> f64 {
        t as f64 / self.fps
    }
}
