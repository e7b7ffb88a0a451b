//! Line-oriented model and structure files.
//!
//! ```text
//! n_y=2
//! n_u=2
//! d=1
//! l=2
//! data=rlc
//! widening=degenerate
//! y(k-1) : 0.86:0.87 : 0.865
//! u(k-1) : 0.12:0.13
//! ```
//!
//! `n_y`, `n_u`, `d` and `l` are required; `data` and `widening` are
//! optional. Each term line carries either nothing (a structure file), an
//! interval coefficient `lo:hi`, or an interval plus point estimate. Blank
//! lines and lines starting with `#` are ignored.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use narxiv_core::estimation::EstimationResult;
use narxiv_core::{Interval, ModelStructure, RegressorTerm, WideningPolicy};

use crate::error::{Error, LineError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub interval: Vec<Interval>,
    pub point: Option<Vec<f64>>,
}

impl Coefficients {
    /// The stored point estimate, or interval midpoints when there is none.
    pub fn point_or_midpoint(&self) -> Vec<f64> {
        match &self.point {
            Some(p) => p.clone(),
            None => self.interval.iter().map(Interval::midpoint).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub structure: ModelStructure,
    pub coefficients: Option<Coefficients>,
    pub data: Option<String>,
    pub widening: Option<WideningPolicy>,
}

impl ModelFile {
    pub fn structure_only(structure: ModelStructure, data: Option<String>) -> Self {
        ModelFile { structure, coefficients: None, data, widening: None }
    }

    pub fn from_estimate(r: &EstimationResult) -> Self {
        ModelFile {
            structure: r.structure.clone(),
            coefficients: Some(Coefficients { interval: r.theta_interval.clone(), point: Some(r.theta_point.clone()) }),
            data: Some(r.provenance.data_name.clone()),
            widening: Some(r.provenance.widening),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.parse().map_err(|e: LineError| e.at(path))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_string()).map_err(|e| Error::io(path, e))
    }

    pub fn require_coefficients(&self) -> std::result::Result<&Coefficients, &'static str> {
        self.coefficients.as_ref().ok_or("structure file has no coefficients")
    }
}

impl fmt::Display for ModelFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.structure;
        writeln!(f, "n_y={}", s.n_y())?;
        writeln!(f, "n_u={}", s.n_u())?;
        writeln!(f, "d={}", s.d())?;
        writeln!(f, "l={}", s.l())?;
        if let Some(d) = &self.data {
            writeln!(f, "data={d}")?;
        }
        if let Some(w) = &self.widening {
            writeln!(f, "widening={w}")?;
        }
        for (i, t) in s.terms().iter().enumerate() {
            write!(f, "{t}")?;
            if let Some(c) = &self.coefficients {
                let iv = c.interval[i];
                write!(f, " : {}:{}", iv.lo(), iv.hi())?;
                if let Some(p) = &c.point {
                    write!(f, " : {}", p[i])?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn number(s: &str, line: usize) -> std::result::Result<f64, LineError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(LineError::new(line, format!("`{}` is not a finite number", s.trim()))),
    }
}

impl FromStr for ModelFile {
    type Err = LineError;

    fn from_str(text: &str) -> std::result::Result<Self, LineError> {
        let mut header: [Option<u32>; 4] = [None; 4];
        let (mut data, mut widening) = (None, None);
        let mut terms = Vec::new();
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        let mut shape: Option<usize> = None;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some((key, value)) = l.split_once('=') {
                if !terms.is_empty() {
                    return Err(LineError::new(line, "header line after term lines"));
                }
                let (key, value) = (key.trim(), value.trim());
                let slot = match key {
                    "n_y" => 0,
                    "n_u" => 1,
                    "d" => 2,
                    "l" => 3,
                    "data" => {
                        data = Some(value.to_string());
                        continue;
                    }
                    "widening" => {
                        widening = Some(value.parse().map_err(|e| LineError::new(line, format!("{e}")))?);
                        continue;
                    }
                    _ => return Err(LineError::new(line, format!("unknown header key `{key}`"))),
                };
                header[slot] =
                    Some(value.parse().map_err(|_| LineError::new(line, format!("{key} must be an integer")))?);
                continue;
            }
            let mut parts = l.split(':');
            let term: RegressorTerm =
                parts.next().unwrap_or("").parse().map_err(|e| LineError::new(line, format!("{e}")))?;
            let fields: Vec<&str> = parts.collect();
            if *shape.get_or_insert(fields.len()) != fields.len() {
                return Err(LineError::new(line, "term lines disagree on coefficient columns"));
            }
            match fields.len() {
                0 => {}
                2 | 3 => {
                    let (lo, hi) = (number(fields[0], line)?, number(fields[1], line)?);
                    intervals.push(Interval::new(lo, hi).map_err(|e| LineError::new(line, format!("{e}")))?);
                    if fields.len() == 3 {
                        points.push(number(fields[2], line)?);
                    }
                }
                _ => return Err(LineError::new(line, "expected `term`, `term : lo:hi` or `term : lo:hi : point`")),
            }
            terms.push(term);
        }
        let [Some(n_y), Some(n_u), Some(d), Some(l)] = header else {
            return Err(LineError::new(1, "missing one of the n_y, n_u, d, l header lines"));
        };
        let structure = ModelStructure::new(terms, n_y, n_u, d, l).map_err(|e| LineError::new(1, format!("{e}")))?;
        let coefficients = match shape {
            Some(2) => Some(Coefficients { interval: intervals, point: None }),
            Some(3) => Some(Coefficients { interval: intervals, point: Some(points) }),
            _ => None,
        };
        if let Some(Coefficients { interval, point: Some(p) }) = &coefficients {
            if let Some(j) = interval.iter().zip(p).position(|(iv, x)| !iv.contains(*x)) {
                return Err(LineError::new(1, format!("point coefficient {j} lies outside its interval")));
            }
        }
        Ok(ModelFile { structure, coefficients, data, widening })
    }
}
