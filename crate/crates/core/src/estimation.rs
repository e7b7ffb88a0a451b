//! Point and interval parameter estimation for a fixed structure.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{
    interval_least_squares, point_least_squares, residual_sum_of_squares, IntervalVector, SolverConfig,
};
use crate::model::{build_regressor_matrix, Dataset, ModelStructure, Regression};
use crate::scalar::PowerMode;

/// How measured samples are turned into intervals before interval
/// estimation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum WideningPolicy {
    /// `[x, x]`: only the arithmetic's own rounding is tracked.
    #[default]
    Degenerate,
    /// `[x - r, x + r]`
    Absolute(f64),
    /// `[x - r|x|, x + r|x|]`
    Relative(f64),
}

impl WideningPolicy {
    pub fn lift(&self, x: f64) -> Result<Interval> {
        let r = match *self {
            WideningPolicy::Degenerate => return Ok(Interval::point(x)?),
            WideningPolicy::Absolute(r) => r,
            WideningPolicy::Relative(r) => crate::round::mul_up(r, x.abs()),
        };
        Ok(Interval::around(x, r)?)
    }

    pub fn lift_all(&self, v: &[f64]) -> Result<Vec<Interval>> {
        v.iter().map(|&x| self.lift(x)).collect()
    }
}

impl fmt::Display for WideningPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WideningPolicy::Degenerate => f.write_str("degenerate"),
            WideningPolicy::Absolute(r) => write!(f, "abs:{}", r),
            WideningPolicy::Relative(r) => write!(f, "rel:{}", r),
        }
    }
}

impl FromStr for WideningPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "degenerate" || s == "none" {
            return Ok(WideningPolicy::Degenerate);
        }
        let (kind, value) = s.split_once(':').ok_or(Error::InvalidArgument("widening must be abs:X or rel:X"))?;
        let r: f64 = value.trim().parse().map_err(|_| Error::InvalidArgument("widening radius is not a number"))?;
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidArgument("widening radius must be finite and non-negative"));
        }
        match kind.trim() {
            "abs" => Ok(WideningPolicy::Absolute(r)),
            "rel" => Ok(WideningPolicy::Relative(r)),
            _ => Err(Error::InvalidArgument("widening must be abs:X or rel:X")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub data_name: String,
    pub widening: WideningPolicy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationResult {
    pub structure: ModelStructure,
    pub theta_point: Vec<f64>,
    pub theta_interval: IntervalVector,
    pub residual_rss: f64,
    pub provenance: Provenance,
}

/// Interval regressor matrix and targets from widened data.
pub fn interval_regression(
    data: &Dataset,
    structure: &ModelStructure,
    widening: WideningPolicy,
) -> Result<Regression<Interval>> {
    let u = widening.lift_all(data.u())?;
    let y = widening.lift_all(data.y())?;
    build_regressor_matrix(structure, &u, &y, PowerMode::Tight)
}

/// Point least squares (QR) on the measured data and verified interval least
/// squares on the widened data. The point estimate is checked to lie inside
/// the interval estimate.
pub fn estimate(
    data: &Dataset,
    structure: &ModelStructure,
    widening: WideningPolicy,
    solver: &SolverConfig,
) -> Result<EstimationResult> {
    let point = build_regressor_matrix(structure, data.u(), data.y(), PowerMode::Tight)?;
    let theta_point = point_least_squares(&point.matrix, &point.target)?;
    let residual_rss = residual_sum_of_squares(&point.matrix, &point.target, &theta_point)?;

    let intervals = interval_regression(data, structure, widening)?;
    let theta_interval = interval_least_squares(&intervals.matrix, &intervals.target, solver)?;

    if let Some(index) = theta_point.iter().zip(&theta_interval).position(|(p, i)| !i.contains(*p)) {
        return Err(Error::ContainmentViolation { index });
    }
    Ok(EstimationResult {
        structure: structure.clone(),
        theta_point,
        theta_interval,
        residual_rss,
        provenance: Provenance { data_name: data.name().into(), widening },
    })
}
