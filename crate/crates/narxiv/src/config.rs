//! `--config FILE` expansion.
//!
//! The file holds flat `key=value` lines mirroring long flags (`max-terms=8`,
//! `interval=true`). Its flags are inserted right after the subcommand
//! names, so any flag given on the command line appears later and wins.

use std::fs;
use std::path::Path;

use crate::error::{Error, LineError, Result};

pub fn parse_config(text: &str) -> std::result::Result<Vec<String>, LineError> {
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (key, value) = l.split_once('=').ok_or_else(|| LineError::new(i + 1, "expected key=value"))?;
        let (key, value) = (key.trim().trim_start_matches("--"), value.trim());
        if key.is_empty() || key == "config" {
            return Err(LineError::new(i + 1, "bad key"));
        }
        match value {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            v => {
                args.push(format!("--{key}"));
                args.push(v.to_string());
            }
        }
    }
    Ok(args)
}

/// Replaces `--config FILE` / `--config=FILE` with the file's flags placed
/// after the leading subcommand tokens. `args[0]` is the program name.
pub fn expand(args: Vec<String>) -> Result<Vec<String>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            config = Some(it.next().ok_or_else(|| Error::Usage("--config needs a file".into()))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            config = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config else { return Ok(rest) };
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let extra = parse_config(&text).map_err(|e| e.at(Path::new(&path)))?;
    let at = 1 + rest.iter().skip(1).take_while(|a| !a.starts_with('-')).count();
    rest.splice(at..at, extra);
    Ok(rest)
}
