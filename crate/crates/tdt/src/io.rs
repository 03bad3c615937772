//! Frame ingestion and PGM output.
//!
//! Binary PGM (P5, maxval 255) is the canonical frame format; 8-bit
//! grayscale PNG is also accepted on input.

use std::fs;
use std::path::{Path, PathBuf};

use image::{DynamicImage, ImageFormat, ImageReader};
use sha2::{Digest, Sha256};
use tdt_core::{Extent, Frame, Video};

use crate::error::{Error, Result};

fn is_frame_file(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| matches!(e.to_ascii_lowercase().as_str(), "pgm" | "png"))
        .unwrap_or(false)
}

/// Frame files of a directory in lexicographic order, or the file itself.
pub fn frame_paths(path: &Path) -> Result<Vec<PathBuf>> {
    let meta = fs::metadata(path).map_err(|e| Error::io(path, e))?;
    if !meta.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut paths = Vec::new();
    for entry in fs::read_dir(path).map_err(|e| Error::io(path, e))? {
        let p = entry.map_err(|e| Error::io(path, e))?.path();
        if p.is_file() && is_frame_file(&p) {
            paths.push(p);
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(Error::EmptyInput(path.to_path_buf()));
    }
    Ok(paths)
}

/// Decodes one 8-bit grayscale frame into its extent and row-major levels.
pub fn read_levels(path: &Path) -> Result<(Extent, Vec<u8>)> {
    let reader = ImageReader::open(path)
        .map_err(|e| Error::io(path, e))?
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?;
    match reader.format() {
        Some(ImageFormat::Pnm) | Some(ImageFormat::Png) => {}
        other => {
            return Err(Error::UnsupportedFormat(
                path.to_path_buf(),
                format!("expected PGM or PNG, detected {other:?}"),
            ))
        }
    }
    let img = reader
        .decode()
        .map_err(|e| Error::UnsupportedFormat(path.to_path_buf(), e.to_string()))?;
    match img {
        DynamicImage::ImageLuma8(buf) => {
            let extent = Extent::new(buf.width(), buf.height());
            Ok((extent, buf.into_raw()))
        }
        other => Err(Error::UnsupportedFormat(
            path.to_path_buf(),
            format!("expected 8-bit grayscale, got {:?}", other.color()),
        )),
    }
}

/// Loads a video from a directory of frames (file order = time order) or a
/// single frame file.
pub fn load_video(path: &Path, fps: f64) -> Result<Video> {
    let paths = frame_paths(path)?;
    let mut extent = None;
    let mut buffers = Vec::with_capacity(paths.len());
    for p in &paths {
        let (e, levels) = read_levels(p)?;
        match extent {
            None => extent = Some(e),
            Some(want) if want != e => {
                return Err(Error::MixedDimensions {
                    path: p.clone(),
                    got_w: e.width,
                    got_h: e.height,
                    want_w: want.width,
                    want_h: want.height,
                })
            }
            Some(_) => {}
        }
        buffers.push(levels);
    }
    let extent = extent.ok_or_else(|| Error::EmptyInput(path.to_path_buf()))?;
    Ok(Video::from_levels(extent, buffers, fps)?)
}

/// Binary PGM bytes for a frame.
pub fn encode_pgm(frame: &Frame) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", frame.width(), frame.height()).into_bytes();
    out.extend_from_slice(frame.levels());
    out
}

pub fn write_pgm(path: &Path, frame: &Frame) -> Result<()> {
    fs::write(path, encode_pgm(frame)).map_err(|e| Error::io(path, e))
}

/// Writes every frame as `frame_NNNN.pgm` into `dir`, creating it if needed.
pub fn write_video(dir: &Path, video: &Video) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::with_capacity(video.len());
    for (k, frame) in video.frames().iter().enumerate() {
        let p = dir.join(format!("frame_{k:04}.pgm"));
        write_pgm(&p, frame)?;
        paths.push(p);
    }
    Ok(paths)
}

/// SHA-256 over dimensions, frame count and every level, as lowercase hex.
pub fn input_digest(video: &Video) -> String {
    let mut h = Sha256::new();
    let e = video.extent();
    h.update(e.width.to_le_bytes());
    h.update(e.height.to_le_bytes());
    h.update((video.len() as u64).to_le_bytes());
    for f in video.frames() {
        h.update(f.levels());
    }
    hex::encode(h.finalize())
}
