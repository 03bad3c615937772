use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] tdt_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}: unsupported format: {1}")]
    UnsupportedFormat(PathBuf, String),
    #[error("{path} is {got_w}x{got_h}, expected {want_w}x{want_h}")]
    MixedDimensions {
        path: PathBuf,
        got_w: u32,
        got_h: u32,
        want_w: u32,
        want_h: u32,
    },
    #[error("no PGM or PNG frames found in {0}")]
    EmptyInput(PathBuf),
    #[error("shape {shape} at frame {frame} leaves the {width}x{height} extent")]
    ShapeOutOfExtent {
        shape: usize,
        frame: usize,
        width: u32,
        height: u32,
    },
    #[error("persistence diagram has no intervals")]
    EmptyDiagram,
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
