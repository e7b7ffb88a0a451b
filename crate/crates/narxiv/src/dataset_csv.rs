//! Dataset CSV: header `k,u,y`, then one row per sample with `k` counting
//! from zero.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use narxiv_core::Dataset;

use crate::error::{Error, LineError, Result};

pub const HEADER: [&str; 3] = ["k", "u", "y"];

pub fn parse_dataset(name: &str, sample_time: f64, input: impl Read) -> std::result::Result<Dataset, LineError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(input);
    let headers = rdr.headers().map_err(|e| LineError::new(1, e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != HEADER {
        return Err(LineError::new(1, "expected header k,u,y"));
    }
    let (mut u, mut y) = (Vec::new(), Vec::new());
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| LineError::new(line, e.to_string()))?;
        if rec.len() != 3 {
            return Err(LineError::new(line, "expected 3 fields"));
        }
        let k: usize = rec[0].parse().map_err(|_| LineError::new(line, "k is not a sample index"))?;
        if k != i {
            return Err(LineError::new(line, format!("expected k={i}, found {k}")));
        }
        let num = |s: &str, what| match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(LineError::new(line, format!("{what} is not a finite number"))),
        };
        u.push(num(&rec[1], "u")?);
        y.push(num(&rec[2], "y")?);
    }
    Dataset::new(name, sample_time, u, y).map_err(|e| LineError::new(1, e.to_string()))
}

/// Reads `path`; the dataset is named after the file stem.
pub fn read_dataset(path: &Path) -> Result<Dataset> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_dataset(&name, 1.0, file).map_err(|e| e.at(path))
}

pub fn write_dataset(out: impl Write, d: &Dataset) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for (k, (u, y)) in d.u().iter().zip(d.y()).enumerate() {
        w.write_record([k.to_string(), u.to_string(), y.to_string()])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let d = Dataset::new("x", 1.0, vec![1.0, -0.5, 1e-7], vec![0.1, 0.30000000000000004, -2.0]).unwrap();
        let mut buf = Vec::new();
        write_dataset(&mut buf, &d).unwrap();
        let back = parse_dataset("x", 1.0, buf.as_slice()).unwrap();
        assert_eq!(back, d);
        let mut again = Vec::new();
        write_dataset(&mut again, &back).unwrap();
        assert_eq!(buf, again);
        assert!(String::from_utf8(buf).unwrap().starts_with("k,u,y\n0,1,0.1\n"));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_dataset("x", 1.0, "a,b,c\n".as_bytes()).unwrap_err().line, 1);
        assert_eq!(parse_dataset("x", 1.0, "k,u,y\n0,1,2\n2,1,2\n".as_bytes()).unwrap_err().line, 3);
        assert_eq!(parse_dataset("x", 1.0, "k,u,y\n0,1,nan\n".as_bytes()).unwrap_err().line, 2);
        assert_eq!(parse_dataset("x", 1.0, "k,u,y\n0,1,zz\n".as_bytes()).unwrap_err().line, 2);
    }
}
