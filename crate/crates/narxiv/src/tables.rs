//! CSV tables: interval matrices, selection results, predictions and RMSE
//! summaries.

use std::io::{Read, Write};

use narxiv_core::selection::{Aic, SelectionReport};
use narxiv_core::{Interval, IntervalMatrix, Matrix};

use crate::error::LineError;

type IoResult = std::io::Result<()>;

/// A degenerate interval is written as its single value, otherwise `lo:hi`.
pub fn interval_cell(x: &Interval) -> String {
    if x.is_degenerate() {
        x.lo().to_string()
    } else {
        format!("{}:{}", x.lo(), x.hi())
    }
}

pub fn parse_interval_cell(s: &str) -> Option<Interval> {
    let s = s.trim();
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (a.trim().parse().ok()?, b.trim().parse().ok()?),
        None => {
            let v = s.parse().ok()?;
            (v, v)
        }
    };
    Interval::new(lo, hi).ok()
}

pub fn write_interval_matrix(out: impl Write, headers: &[String], m: &IntervalMatrix) -> IoResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(headers)?;
    for i in 0..m.rows() {
        w.write_record(m.row(i).iter().map(interval_cell))?;
    }
    w.flush()
}

pub fn read_interval_matrix(input: impl Read) -> Result<(Vec<String>, IntervalMatrix), LineError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(input);
    let headers: Vec<String> =
        rdr.headers().map_err(|e| LineError::new(1, e.to_string()))?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| LineError::new(line, e.to_string()))?;
        let row = rec
            .iter()
            .map(|c| parse_interval_cell(c).ok_or_else(|| LineError::new(line, format!("bad interval cell `{c}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let m = Matrix::from_rows(&rows).map_err(|e| LineError::new(1, e.to_string()))?;
    if !rows.is_empty() && m.cols() != headers.len() {
        return Err(LineError::new(1, "header width differs from row width"));
    }
    Ok((headers, m))
}

pub fn write_ranking(out: impl Write, report: &SelectionReport) -> IoResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rank", "term", "err", "cumulative_err"])?;
    for (i, (r, c)) in report.ranked_terms.iter().zip(report.cumulative_err()).enumerate() {
        w.write_record([(i + 1).to_string(), r.term.to_string(), r.err.to_string(), c.to_string()])?;
    }
    w.flush()
}

pub fn write_aic_trace(out: impl Write, trace: &[(usize, Aic)]) -> IoResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n_terms", "aic", "perfect_fit"])?;
    for (n, a) in trace {
        w.write_record([n.to_string(), a.value.to_string(), a.perfect_fit.to_string()])?;
    }
    w.flush()
}

/// `k,y,yhat` for samples `start..`.
pub fn write_point_predictions(out: impl Write, start: usize, y: &[f64], y_hat: &[f64]) -> IoResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "y", "yhat"])?;
    for (i, p) in y_hat.iter().enumerate() {
        let k = start + i;
        w.write_record([k.to_string(), y[k].to_string(), p.to_string()])?;
    }
    w.flush()
}

/// `k,y,yhat_lo,yhat_hi` for samples `start..`.
pub fn write_interval_predictions(out: impl Write, start: usize, y: &[f64], y_hat: &[Interval]) -> IoResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "y", "yhat_lo", "yhat_hi"])?;
    for (i, p) in y_hat.iter().enumerate() {
        let k = start + i;
        w.write_record([k.to_string(), y[k].to_string(), p.lo().to_string(), p.hi().to_string()])?;
    }
    w.flush()
}

/// One validation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RmseRow {
    pub case: String,
    /// `osa` or `free-run`
    pub mode: String,
    pub rmse: f64,
    pub interval: Option<Interval>,
    /// Step at which an interval free run exceeded its width cap.
    pub width_cap_step: Option<usize>,
}

pub const RMSE_HEADER: [&str; 6] = ["case", "mode", "rmse", "rmse_interval_lo", "rmse_interval_hi", "width_cap_step"];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_rmse_rows(out: impl Write, rows: &[RmseRow]) -> IoResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RMSE_HEADER)?;
    for r in rows {
        w.write_record([
            r.case.clone(),
            r.mode.clone(),
            r.rmse.to_string(),
            opt(r.interval.map(|i| i.lo())),
            opt(r.interval.map(|i| i.hi())),
            opt(r.width_cap_step),
        ])?;
    }
    w.flush()
}

pub fn read_rmse_rows(input: impl Read) -> Result<Vec<RmseRow>, LineError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(input);
    let headers = rdr.headers().map_err(|e| LineError::new(1, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != RMSE_HEADER {
        return Err(LineError::new(1, "not an RMSE summary"));
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| LineError::new(line, e.to_string()))?;
        let bad = |what: &str| LineError::new(line, format!("bad {what}"));
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad("number"));
        let interval = match (&rec[3], &rec[4]) {
            ("", "") => None,
            (lo, hi) => Some(Interval::new(num(lo)?, num(hi)?).map_err(|_| bad("interval"))?),
        };
        let width_cap_step = match &rec[5] {
            "" => None,
            s => Some(s.parse().map_err(|_| bad("step"))?),
        };
        rows.push(RmseRow { case: rec[0].into(), mode: rec[1].into(), rmse: num(&rec[2])?, interval, width_cap_step });
    }
    Ok(rows)
}

/// Free-run RMSE, one-step-ahead RMSE and one-step-ahead interval RMSE per
/// case, in first-seen case order. Later rows for the same case and mode win.
pub fn write_report(out: impl Write, rows: &[RmseRow]) -> IoResult {
    struct Line {
        case: String,
        free: Option<f64>,
        osa: Option<f64>,
        interval: Option<Interval>,
    }
    let mut lines: Vec<Line> = Vec::new();
    for r in rows {
        let pos = match lines.iter().position(|l| l.case == r.case) {
            Some(p) => p,
            None => {
                lines.push(Line { case: r.case.clone(), free: None, osa: None, interval: None });
                lines.len() - 1
            }
        };
        let l = &mut lines[pos];
        match r.mode.as_str() {
            "free-run" => l.free = Some(r.rmse),
            _ => {
                l.osa = Some(r.rmse);
                if r.interval.is_some() {
                    l.interval = r.interval;
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["case", "rmse_free_run", "rmse_osa", "rmse_interval_lo", "rmse_interval_hi"])?;
    for l in lines {
        w.write_record([
            l.case,
            opt(l.free),
            opt(l.osa),
            opt(l.interval.map(|i| i.lo())),
            opt(l.interval.map(|i| i.hi())),
        ])?;
    }
    w.flush()
}
