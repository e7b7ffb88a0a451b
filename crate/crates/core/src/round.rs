//! Directed rounding on `f64` without touching the FPU rounding mode.
//!
//! Each operation is evaluated once in round-to-nearest; an error-free
//! transformation (TwoSum, FMA residual) recovers the sign of the rounding
//! error, and the result is stepped one ulp only when it sits on the wrong
//! side of the exact value. Exactly representable results come back
//! unchanged, so `[0,1]*[0,1]` is `[0,1]` and not a widened box.
//!
//! Where the error-free transformation is not exact (results in or near the
//! subnormal range) the result is widened unconditionally by one ulp.

/// Below this magnitude FMA residuals may themselves be rounded.
const EXACT_FLOOR: f64 = 1.0020841800044864e-292; // 2^-969

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bp = s - a;
    let ap = s - bp;
    (s, (a - ap) + (b - bp))
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s;
    }
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s;
    }
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// Sign of `exact(a*b) - fl(a*b)`, or `None` when it cannot be recovered.
#[inline]
fn mul_err_sign(a: f64, b: f64, p: f64) -> Option<f64> {
    if a == 0.0 || b == 0.0 {
        return Some(0.0);
    }
    if p.abs() < EXACT_FLOOR {
        return None;
    }
    Some(libm::fma(a, b, -p))
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    match mul_err_sign(a, b, p) {
        Some(e) if e >= 0.0 => p,
        _ => p.next_down(),
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    match mul_err_sign(a, b, p) {
        Some(e) if e <= 0.0 => p,
        _ => p.next_up(),
    }
}

/// Sign of `exact(a/b) - fl(a/b)`; `b` must be non-zero.
#[inline]
fn div_err_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if a == 0.0 {
        return Some(0.0);
    }
    if q.abs() < EXACT_FLOOR || a.abs() < EXACT_FLOOR || !b.is_normal() {
        return None;
    }
    // a - q*b is exact here; its sign relative to b gives the error sign.
    let r = libm::fma(-q, b, a);
    Some(if b > 0.0 { r } else { -r })
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_err_sign(a, b, q) {
        Some(e) if e >= 0.0 => q,
        _ => q.next_down(),
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_err_sign(a, b, q) {
        Some(e) if e <= 0.0 => q,
        _ => q.next_up(),
    }
}

/// `x` must be non-negative.
#[inline]
pub fn sqrt_down(x: f64) -> f64 {
    let s = libm::sqrt(x);
    if x == 0.0 {
        return 0.0;
    }
    if x < EXACT_FLOOR {
        return s.next_down().max(0.0);
    }
    // x - s*s > 0 means the true root exceeds s.
    if libm::fma(-s, s, x) >= 0.0 {
        s
    } else {
        s.next_down()
    }
}

#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    let s = libm::sqrt(x);
    if x == 0.0 {
        return 0.0;
    }
    if x < EXACT_FLOOR {
        return s.next_up();
    }
    if libm::fma(-s, s, x) <= 0.0 {
        s
    } else {
        s.next_up()
    }
}

/// `x^n` for `x >= 0` by left-to-right repeated multiplication, rounded down.
pub fn pow_down_nonneg(x: f64, n: u32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut acc = x;
    for _ in 1..n {
        acc = mul_down(acc, x);
    }
    acc
}

pub fn pow_up_nonneg(x: f64, n: u32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut acc = x;
    for _ in 1..n {
        acc = mul_up(acc, x);
    }
    acc
}
