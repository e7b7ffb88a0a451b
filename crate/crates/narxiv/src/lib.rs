//! File formats and the `narxiv` command line pipeline built on
//! [`narxiv_core`].
//!
//! Every format is plain text with a mandatory header and `.` as decimal
//! separator. Floats are written in shortest round-trip form, so reading a
//! file and writing it back reproduces it byte for byte.

pub mod cli;
pub mod config;
pub mod dataset_csv;
pub mod error;
pub mod manifest;
pub mod model_file;
pub mod tables;

pub use error::{Error, Result};
pub use model_file::ModelFile;
