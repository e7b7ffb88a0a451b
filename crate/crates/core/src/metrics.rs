//! Normalised root-mean-square error,
//! `sqrt(sum (y - yhat)^2) / sqrt(sum (y - mean(y))^2)`.
//!
//! The point and interval versions perform the same operations in the same
//! order, so the interval result over degenerate inputs contains the point
//! result.

use crate::error::{Error, Result};
use crate::interval::Interval;

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { expected: a, found: b });
    }
    if a < 2 {
        return Err(Error::InsufficientData { needed: 1, available: a });
    }
    Ok(())
}

pub fn rmse_point(y: &[f64], y_hat: &[f64]) -> Result<f64> {
    check_lengths(y.len(), y_hat.len())?;
    let mean = y.iter().fold(0.0, |s, v| s + v) / y.len() as f64;
    let num = y.iter().zip(y_hat).fold(0.0, |s, (a, b)| {
        let d = a - b;
        s + d * d
    });
    let den = y.iter().fold(0.0, |s, a| {
        let d = a - mean;
        s + d * d
    });
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(libm::sqrt(num) / libm::sqrt(den))
}

pub fn rmse_interval(y: &[Interval], y_hat: &[Interval]) -> Result<Interval> {
    check_lengths(y.len(), y_hat.len())?;
    let mut sum = Interval::ZERO;
    for v in y {
        sum = sum.add(*v)?;
    }
    let mean = sum.div(Interval::point(y.len() as f64)?)?;
    let mut num = Interval::ZERO;
    for (a, b) in y.iter().zip(y_hat) {
        num = num.add(a.sub(*b)?.power(2)?)?;
    }
    let mut den = Interval::ZERO;
    for a in y {
        den = den.add(a.sub(mean)?.power(2)?)?;
    }
    if den.contains_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(num.sqrt()?.div(den.sqrt()?)?)
}
