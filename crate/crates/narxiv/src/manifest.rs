//! Run manifest: the invocation, tool version and SHA-256 digests of every
//! input and output file. No timestamps, so repeated runs match bitwise.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const FILE_NAME: &str = "manifest.json";

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
    pub command: String,
    /// Arguments after config-file expansion, program name excluded.
    pub args: Vec<String>,
    /// Resolved seed when the command uses one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(format!("{:x}", Sha256::digest(&bytes)))
}

fn digests(paths: &[PathBuf]) -> Result<Vec<FileDigest>> {
    paths.iter().map(|p| Ok(FileDigest { path: p.display().to_string(), sha256: sha256_file(p)? })).collect()
}

impl Manifest {
    pub fn new(
        command: &str,
        args: &[String],
        seed: Option<u64>,
        inputs: &[PathBuf],
        outputs: &[PathBuf],
    ) -> Result<Self> {
        Ok(Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            core_version: narxiv_core::VERSION,
            command: command.to_string(),
            args: args.to_vec(),
            seed,
            inputs: digests(inputs)?,
            outputs: digests(outputs)?,
        })
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(FILE_NAME);
        let mut text = serde_json::to_string_pretty(self).expect("manifest serialises");
        text.push('\n');
        fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}
