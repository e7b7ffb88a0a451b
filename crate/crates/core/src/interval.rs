//! Closed real intervals with outward-rounded arithmetic.
//!
//! Every operation returns an interval that contains the exact real result
//! for every choice of members of the operands. Endpoints are always finite;
//! an operation whose bound would leave the finite range reports
//! [`IntervalError::Overflow`] instead of storing an infinity.

use core::fmt;
use core::str::FromStr;

use crate::error::IntervalError;
use crate::round;

/// A closed interval `[lo, hi]` with finite endpoints and `lo <= hi`.
///
/// A degenerate interval (`lo == hi`) stands for a single real number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

type IResult = Result<Interval, IntervalError>;

impl Default for Interval {
    fn default() -> Self {
        Interval::ZERO
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Builds `[a, b]`. Representable endpoints are stored as given, so the
    /// requested set is never shrunk.
    pub fn new(a: f64, b: f64) -> IResult {
        if !a.is_finite() || !b.is_finite() {
            return Err(IntervalError::Domain);
        }
        if a > b {
            return Err(IntervalError::Inverted);
        }
        // + 0.0 maps -0.0 to +0.0
        Ok(Interval { lo: a + 0.0, hi: b + 0.0 })
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: f64) -> IResult {
        Interval::new(x, x)
    }

    /// `[x - r, x + r]` with both endpoints rounded outward.
    pub fn around(x: f64, r: f64) -> IResult {
        if !r.is_finite() || r < 0.0 {
            return Err(IntervalError::Domain);
        }
        if !x.is_finite() {
            return Err(IntervalError::Domain);
        }
        Interval::checked(round::sub_down(x, r), round::add_up(x, r))
    }

    /// Internal constructor for computed bounds: only finiteness can fail.
    #[inline]
    fn checked(lo: f64, hi: f64) -> IResult {
        if lo.is_finite() && hi.is_finite() {
            debug_assert!(lo <= hi, "computed bounds inverted: [{lo}, {hi}]");
            Ok(Interval { lo: lo + 0.0, hi: hi + 0.0 })
        } else {
            Err(IntervalError::Overflow)
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, rhs: Interval) -> IResult {
        Interval::checked(round::add_down(self.lo, rhs.lo), round::add_up(self.hi, rhs.hi))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, rhs: Interval) -> IResult {
        Interval::checked(round::sub_down(self.lo, rhs.hi), round::sub_up(self.hi, rhs.lo))
    }

    /// Endpoint products `S = {lo*lo', lo*hi', hi*lo', hi*hi'}`; the result is
    /// `[min S, max S]` with each candidate rounded in its own direction.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Interval) -> IResult {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = round::mul_down(a, c).min(round::mul_down(a, d)).min(round::mul_down(b, c)).min(round::mul_down(b, d));
        let hi = round::mul_up(a, c).max(round::mul_up(a, d)).max(round::mul_up(b, c)).max(round::mul_up(b, d));
        Interval::checked(lo, hi)
    }

    /// Quotient, defined only when `rhs` excludes zero.
    ///
    /// Computed from the four endpoint quotients, which is the same set as
    /// `self * [1/hi', 1/lo']` but rounds once instead of twice.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, rhs: Interval) -> IResult {
        if rhs.contains_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = round::div_down(a, c).min(round::div_down(a, d)).min(round::div_down(b, c)).min(round::div_down(b, d));
        let hi = round::div_up(a, c).max(round::div_up(a, d)).max(round::div_up(b, c)).max(round::div_up(b, d));
        Interval::checked(lo, hi)
    }

    pub fn recip(self) -> IResult {
        Interval::ONE.div(self)
    }

    /// Tight enclosure of `{x^n : x in self}`. For even `n` an interval
    /// straddling zero has lower bound exactly 0.
    pub fn power(self, n: u32) -> IResult {
        if n == 0 {
            return Ok(Interval::ONE);
        }
        if n == 1 {
            return Ok(self);
        }
        let (lo, hi) = (self.lo, self.hi);
        if n % 2 == 1 {
            // odd powers are monotone
            let l = if lo >= 0.0 { round::pow_down_nonneg(lo, n) } else { -round::pow_up_nonneg(-lo, n) };
            let h = if hi >= 0.0 { round::pow_up_nonneg(hi, n) } else { -round::pow_down_nonneg(-hi, n) };
            Interval::checked(l, h)
        } else if lo >= 0.0 {
            Interval::checked(round::pow_down_nonneg(lo, n), round::pow_up_nonneg(hi, n))
        } else if hi <= 0.0 {
            Interval::checked(round::pow_down_nonneg(-hi, n), round::pow_up_nonneg(-lo, n))
        } else {
            Interval::checked(0.0, round::pow_up_nonneg(self.mag(), n))
        }
    }

    /// `x * x * ... * x` in interval multiplication. Encloses `power(n)` but
    /// is in general wider, e.g. `[-1,1]*[-1,1] = [-1,1]`.
    pub fn mul_chain_power(self, n: u32) -> IResult {
        if n == 0 {
            return Ok(Interval::ONE);
        }
        let mut acc = self;
        for _ in 1..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Square root; the interval must not reach below zero.
    pub fn sqrt(self) -> IResult {
        if self.lo < 0.0 {
            return Err(IntervalError::Domain);
        }
        Interval::checked(round::sqrt_down(self.lo), round::sqrt_up(self.hi))
    }

    /// `hi - lo`, rounded up.
    pub fn width(&self) -> f64 {
        round::sub_up(self.hi, self.lo)
    }

    /// A point inside the interval, as close to the centre as rounding allows.
    pub fn midpoint(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on the distance from `midpoint()` to either endpoint.
    pub fn radius(&self) -> f64 {
        let m = self.midpoint();
        round::sub_up(self.hi, m).max(round::sub_up(m, self.lo))
    }

    /// `max |x|` over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `self` lies in the open interior of `other`.
    pub fn is_interior(&self, other: &Interval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    /// Set intersection; `None` when the intervals are disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Widens both sides by `abs + rel * mag(self)`, rounded outward.
    pub fn inflate(&self, abs: f64, rel: f64) -> IResult {
        let delta = round::add_up(abs, round::mul_up(rel, self.mag()));
        Interval::checked(round::sub_down(self.lo, delta), round::add_up(self.hi, delta))
    }
}

impl core::ops::Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval { lo: -self.hi + 0.0, hi: -self.lo + 0.0 }
    }
}

/// `[lo,hi]` with shortest round-trip decimal endpoints.
impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseIntervalError {
    Syntax,
    Invalid(IntervalError),
}

impl fmt::Display for ParseIntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseIntervalError::Syntax => f.write_str("expected interval of the form [lo,hi]"),
            ParseIntervalError::Invalid(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for ParseIntervalError {}

impl FromStr for Interval {
    type Err = ParseIntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or(ParseIntervalError::Syntax)?;
        let (a, b) = inner.split_once(',').ok_or(ParseIntervalError::Syntax)?;
        let a: f64 = a.trim().parse().map_err(|_| ParseIntervalError::Syntax)?;
        let b: f64 = b.trim().parse().map_err(|_| ParseIntervalError::Syntax)?;
        Interval::new(a, b).map_err(ParseIntervalError::Invalid)
    }
}
