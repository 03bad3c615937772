//! Video ingestion, scene generation, reports and the `tdt` command line.

pub mod checks;
pub mod cli;
pub mod error;
pub mod io;
pub mod report;
pub mod scene;
pub mod svg;

pub use error::{Error, Result};
