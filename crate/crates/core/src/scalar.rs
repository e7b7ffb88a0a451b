//! Arithmetic shared by point (`f64`) and interval evaluation of models.
//!
//! Point and interval code paths run the same sequence of operations in the
//! same order. Because directed rounding is monotone, an interval evaluation
//! over degenerate inputs then always contains the corresponding `f64`
//! evaluation.

use core::fmt::Debug;

use crate::error::IntervalError;
use crate::interval::Interval;

/// How integer powers are evaluated on intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PowerMode {
    /// Image of `x^n` over the interval.
    #[default]
    Tight,
    /// Repeated interval multiplication.
    Chain,
}

pub trait Scalar: Copy + Debug + PartialEq {
    fn from_f64(x: f64) -> Result<Self, IntervalError>;
    fn zero() -> Self;
    fn one() -> Self;
    fn try_add(self, rhs: Self) -> Result<Self, IntervalError>;
    fn try_sub(self, rhs: Self) -> Result<Self, IntervalError>;
    fn try_mul(self, rhs: Self) -> Result<Self, IntervalError>;
    fn try_pow(self, n: u32, mode: PowerMode) -> Result<Self, IntervalError>;
    /// Width for intervals, zero for points.
    fn spread(&self) -> f64;
    /// Representative point (the value itself for `f64`).
    fn center(&self) -> f64;
}

#[inline]
fn finite(x: f64) -> Result<f64, IntervalError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(IntervalError::Overflow)
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Result<Self, IntervalError> {
        if x.is_finite() {
            Ok(x)
        } else {
            Err(IntervalError::Domain)
        }
    }

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn try_add(self, rhs: Self) -> Result<Self, IntervalError> {
        finite(self + rhs)
    }

    fn try_sub(self, rhs: Self) -> Result<Self, IntervalError> {
        finite(self - rhs)
    }

    fn try_mul(self, rhs: Self) -> Result<Self, IntervalError> {
        finite(self * rhs)
    }

    /// Left-to-right repeated multiplication, mirroring the interval path.
    fn try_pow(self, n: u32, _mode: PowerMode) -> Result<Self, IntervalError> {
        if n == 0 {
            return Ok(1.0);
        }
        let mut acc = self;
        for _ in 1..n {
            acc *= self;
        }
        finite(acc)
    }

    fn spread(&self) -> f64 {
        0.0
    }

    fn center(&self) -> f64 {
        *self
    }
}

impl Scalar for Interval {
    fn from_f64(x: f64) -> Result<Self, IntervalError> {
        Interval::point(x)
    }

    fn zero() -> Self {
        Interval::ZERO
    }

    fn one() -> Self {
        Interval::ONE
    }

    fn try_add(self, rhs: Self) -> Result<Self, IntervalError> {
        self.add(rhs)
    }

    fn try_sub(self, rhs: Self) -> Result<Self, IntervalError> {
        self.sub(rhs)
    }

    fn try_mul(self, rhs: Self) -> Result<Self, IntervalError> {
        self.mul(rhs)
    }

    fn try_pow(self, n: u32, mode: PowerMode) -> Result<Self, IntervalError> {
        match mode {
            PowerMode::Tight => self.power(n),
            PowerMode::Chain => self.mul_chain_power(n),
        }
    }

    fn spread(&self) -> f64 {
        self.width()
    }

    fn center(&self) -> f64 {
        self.midpoint()
    }
}
