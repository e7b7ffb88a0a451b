//! NARX polynomial models: regressor terms, structures, datasets and
//! simulation over point or interval scalars.
//!
//! A model predicts `y(k)` as `sum_i theta_i * term_i(k)` where each term is a
//! monomial in lagged outputs `y(k-j)` (`j >= 1`) and lagged inputs `u(k-j)`
//! (`j >= d`). Noise (moving-average) regressors are not modelled.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::Matrix;
use crate::scalar::{PowerMode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signal {
    Y,
    U,
}

impl Signal {
    fn symbol(self) -> char {
        match self {
            Signal::Y => 'y',
            Signal::U => 'u',
        }
    }
}

/// `signal(k - lag)^exponent`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub signal: Signal,
    pub lag: u32,
    pub exponent: u32,
}

impl Factor {
    pub fn y(lag: u32, exponent: u32) -> Factor {
        Factor { signal: Signal::Y, lag, exponent }
    }

    pub fn u(lag: u32, exponent: u32) -> Factor {
        Factor { signal: Signal::U, lag, exponent }
    }
}

/// One monomial of the model polynomial. Factors are kept sorted by
/// `(signal, lag)` with repeated factors merged; the constant term has no
/// factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegressorTerm {
    factors: Vec<Factor>,
}

impl RegressorTerm {
    pub fn constant() -> Self {
        RegressorTerm { factors: Vec::new() }
    }

    pub fn new(mut factors: Vec<Factor>) -> Result<Self> {
        for f in &factors {
            if f.exponent == 0 {
                return Err(Error::InvalidArgument("factor exponent must be positive"));
            }
            if f.signal == Signal::Y && f.lag == 0 {
                return Err(Error::InvalidArgument("output lags start at 1"));
            }
        }
        factors.sort_by_key(|f| (f.signal, f.lag));
        let mut merged: Vec<Factor> = Vec::with_capacity(factors.len());
        for f in factors {
            match merged.last_mut() {
                Some(last) if last.signal == f.signal && last.lag == f.lag => last.exponent += f.exponent,
                _ => merged.push(f),
            }
        }
        Ok(RegressorTerm { factors: merged })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.exponent).sum()
    }

    /// Largest lag over all factors (0 for the constant).
    pub fn max_lag(&self) -> usize {
        self.factors.iter().map(|f| f.lag as usize).max().unwrap_or(0)
    }

    fn lags_of(&self, signal: Signal) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().filter(move |f| f.signal == signal).map(|f| f.lag)
    }

    /// Value at sample `k`; the caller guarantees `k >= max_lag()`.
    ///
    /// Factors multiply left to right, each factor power computed first.
    pub fn evaluate<S: Scalar>(&self, u: &[S], y: &[S], k: usize, mode: PowerMode) -> Result<S> {
        let mut acc: Option<S> = None;
        for f in &self.factors {
            let src = match f.signal {
                Signal::Y => y,
                Signal::U => u,
            };
            let v = src[k - f.lag as usize].try_pow(f.exponent, mode)?;
            acc = Some(match acc {
                None => v,
                Some(a) => a.try_mul(v)?,
            });
        }
        Ok(acc.unwrap_or_else(S::one))
    }
}

impl fmt::Display for RegressorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if fac.lag == 0 {
                write!(f, "{}(k)", fac.signal.symbol())?;
            } else {
                write!(f, "{}(k-{})", fac.signal.symbol(), fac.lag)?;
            }
            if fac.exponent > 1 {
                write!(f, "^{}", fac.exponent)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTermError(pub &'static str);

impl fmt::Display for ParseTermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad regressor term: {}", self.0)
    }
}

impl core::error::Error for ParseTermError {}

fn parse_factor(s: &str) -> core::result::Result<Factor, ParseTermError> {
    let s = s.trim();
    let (base, exponent) = match s.split_once('^') {
        Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| ParseTermError("exponent"))?),
        None => (s, 1),
    };
    let signal = match base.chars().next() {
        Some('y') => Signal::Y,
        Some('u') => Signal::U,
        _ => return Err(ParseTermError("factor must start with y or u")),
    };
    let inner = base[1..]
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or(ParseTermError("expected (k-lag)"))?
        .trim();
    let rest = inner.strip_prefix('k').ok_or(ParseTermError("expected k"))?.trim();
    let lag = if rest.is_empty() {
        0
    } else {
        rest.strip_prefix('-')
            .ok_or(ParseTermError("expected k-lag"))?
            .trim()
            .parse::<u32>()
            .map_err(|_| ParseTermError("lag"))?
    };
    Ok(Factor { signal, lag, exponent })
}

impl FromStr for RegressorTerm {
    type Err = ParseTermError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(RegressorTerm::constant());
        }
        let factors = s.split('*').map(parse_factor).collect::<core::result::Result<Vec<_>, _>>()?;
        RegressorTerm::new(factors).map_err(|_| ParseTermError("invalid factor"))
    }
}

/// Ordered list of regressor terms plus the candidate-space bounds they were
/// drawn from: output lags `1..=n_y`, input lags `d..d+n_u`, degree `<= l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelStructure {
    terms: Vec<RegressorTerm>,
    n_y: u32,
    n_u: u32,
    d: u32,
    l: u32,
}

impl ModelStructure {
    pub fn new(terms: Vec<RegressorTerm>, n_y: u32, n_u: u32, d: u32, l: u32) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if terms[..i].contains(t) {
                return Err(Error::InvalidArgument("duplicate regressor term"));
            }
            if t.degree() > l {
                return Err(Error::InvalidArgument("term degree exceeds l"));
            }
            if t.lags_of(Signal::Y).any(|lag| lag > n_y) {
                return Err(Error::InvalidArgument("output lag exceeds n_y"));
            }
            if t.lags_of(Signal::U).any(|lag| lag < d || lag >= d + n_u) {
                return Err(Error::InvalidArgument("input lag outside d..d+n_u"));
            }
        }
        Ok(ModelStructure { terms, n_y, n_u, d, l })
    }

    /// Smallest bounds that admit `terms`; `d` is kept when there are no
    /// input factors.
    pub fn fitted(terms: Vec<RegressorTerm>, d: u32) -> Result<Self> {
        let n_y = terms.iter().flat_map(|t| t.lags_of(Signal::Y)).max().unwrap_or(0);
        let u_lags = || terms.iter().flat_map(|t| t.lags_of(Signal::U));
        let (d, n_u) = match (u_lags().min(), u_lags().max()) {
            (Some(lo), Some(hi)) => (lo, hi - lo + 1),
            _ => (d, 0),
        };
        let l = terms.iter().map(RegressorTerm::degree).max().unwrap_or(0).max(1);
        ModelStructure::new(terms, n_y, n_u, d, l)
    }

    pub fn terms(&self) -> &[RegressorTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_y(&self) -> u32 {
        self.n_y
    }

    pub fn n_u(&self) -> u32 {
        self.n_u
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Samples of history consumed before the first prediction.
    pub fn max_lag(&self) -> usize {
        self.terms.iter().map(RegressorTerm::max_lag).max().unwrap_or(0)
    }
}

/// All monomials of degree `0..=l` over `y(k-1..=k-n_y)` and
/// `u(k-d)..u(k-d-n_u+1)`: `C(n_y + n_u + l, l)` terms, constant first, then
/// by degree.
pub fn candidate_terms(l: u32, n_y: u32, n_u: u32, d: u32) -> Vec<RegressorTerm> {
    let vars: Vec<Factor> =
        (1..=n_y).map(|lag| Factor::y(lag, 1)).chain((0..n_u).map(|j| Factor::u(d + j, 1))).collect();
    let mut out = Vec::new();
    out.push(RegressorTerm::constant());
    let mut idx: Vec<usize> = Vec::new();
    for deg in 1..=l as usize {
        if vars.is_empty() {
            break;
        }
        // non-decreasing index tuples = multisets of size deg
        idx.clear();
        idx.resize(deg, 0);
        loop {
            let factors = idx.iter().map(|&i| vars[i]).collect();
            out.push(RegressorTerm::new(factors).expect("candidate factors are valid"));
            let Some(pos) = (0..deg).rev().find(|&p| idx[p] + 1 < vars.len()) else {
                break;
            };
            let next = idx[pos] + 1;
            for slot in &mut idx[pos..] {
                *slot = next;
            }
        }
    }
    out
}

/// Paired input/output record.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    sample_time: f64,
    u: Vec<f64>,
    y: Vec<f64>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, sample_time: f64, u: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if u.len() != y.len() {
            return Err(Error::LengthMismatch { expected: u.len(), found: y.len() });
        }
        if u.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("dataset values must be finite"));
        }
        if !(sample_time.is_finite() && sample_time > 0.0) {
            return Err(Error::InvalidArgument("sample time must be positive"));
        }
        Ok(Dataset { name: name.into(), sample_time, u, y })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sample_time(&self) -> f64 {
        self.sample_time
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// `[0, at)` and `[at, len)`.
    pub fn split_at(&self, at: usize) -> (Dataset, Dataset) {
        let at = at.min(self.len());
        let part = |suffix: &str, r: core::ops::Range<usize>| Dataset {
            name: alloc::format!("{}{}", self.name, suffix),
            sample_time: self.sample_time,
            u: self.u[r.clone()].to_vec(),
            y: self.y[r].to_vec(),
        };
        (part("/ident", 0..at), part("/valid", at..self.len()))
    }
}

/// Degenerate intervals for every sample.
pub fn to_intervals(v: &[f64]) -> Result<Vec<Interval>> {
    v.iter().map(|&x| Interval::point(x).map_err(Error::from)).collect()
}

/// Regressor matrix with aligned targets; row `i` corresponds to sample
/// `start + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Regression<S> {
    pub matrix: Matrix<S>,
    pub target: Vec<S>,
    pub start: usize,
}

/// Regressor matrix for an explicit term list with rows starting at `start`.
pub fn regressors_from<S: Scalar>(
    terms: &[RegressorTerm],
    u: &[S],
    y: &[S],
    start: usize,
    mode: PowerMode,
) -> Result<Regression<S>> {
    if u.len() != y.len() {
        return Err(Error::LengthMismatch { expected: y.len(), found: u.len() });
    }
    let lag = terms.iter().map(RegressorTerm::max_lag).max().unwrap_or(0);
    if start < lag {
        return Err(Error::InvalidArgument("row start precedes available history"));
    }
    let n = y.len();
    if n <= start {
        return Err(Error::InsufficientData { needed: start, available: n });
    }
    let rows = n - start;
    let mut data = Vec::with_capacity(rows * terms.len());
    for k in start..n {
        for t in terms {
            data.push(t.evaluate(u, y, k, mode)?);
        }
    }
    Ok(Regression { matrix: Matrix::new(rows, terms.len(), data)?, target: y[start..].to_vec(), start })
}

/// Rows `k = max_lag .. len-1`; samples without full history are dropped.
pub fn build_regressor_matrix<S: Scalar>(
    s: &ModelStructure,
    u: &[S],
    y: &[S],
    mode: PowerMode,
) -> Result<Regression<S>> {
    regressors_from(s.terms(), u, y, s.max_lag(), mode)
}

fn predict_at<S: Scalar>(s: &ModelStructure, theta: &[S], u: &[S], y: &[S], k: usize, mode: PowerMode) -> Result<S> {
    let mut acc = S::zero();
    for (t, &th) in s.terms().iter().zip(theta) {
        acc = acc.try_add(th.try_mul(t.evaluate(u, y, k, mode)?)?)?;
    }
    Ok(acc)
}

fn check_theta<S>(s: &ModelStructure, theta: &[S]) -> Result<()> {
    if theta.len() != s.len() {
        return Err(Error::LengthMismatch { expected: s.len(), found: theta.len() });
    }
    Ok(())
}

/// One-step-ahead predictions from measured history, for samples
/// `max_lag .. len-1`.
pub fn one_step_ahead<S: Scalar>(s: &ModelStructure, theta: &[S], u: &[S], y: &[S], mode: PowerMode) -> Result<Vec<S>> {
    check_theta(s, theta)?;
    if u.len() != y.len() {
        return Err(Error::LengthMismatch { expected: y.len(), found: u.len() });
    }
    let start = s.max_lag();
    if y.len() <= start {
        return Err(Error::InsufficientData { needed: start, available: y.len() });
    }
    (start..y.len()).map(|k| predict_at(s, theta, u, y, k, mode)).collect()
}

/// Free-run simulation over the whole input record. The first `max_lag`
/// outputs are copied from `y_init`; later outputs feed back as history.
pub fn free_run<S: Scalar>(s: &ModelStructure, theta: &[S], u: &[S], y_init: &[S], mode: PowerMode) -> Result<Vec<S>> {
    let report = simulate(s, theta, u, y_init, mode, None)?;
    Ok(report.outputs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapExceeded {
    pub step: usize,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreeRunReport<S> {
    /// Outputs up to and including the step that exceeded the cap.
    pub outputs: Vec<S>,
    pub cap_exceeded: Option<CapExceeded>,
}

/// Free run that stops once an output's width exceeds `width_cap`.
pub fn free_run_capped<S: Scalar>(
    s: &ModelStructure,
    theta: &[S],
    u: &[S],
    y_init: &[S],
    mode: PowerMode,
    width_cap: f64,
) -> Result<FreeRunReport<S>> {
    simulate(s, theta, u, y_init, mode, Some(width_cap))
}

fn simulate<S: Scalar>(
    s: &ModelStructure,
    theta: &[S],
    u: &[S],
    y_init: &[S],
    mode: PowerMode,
    cap: Option<f64>,
) -> Result<FreeRunReport<S>> {
    check_theta(s, theta)?;
    let start = s.max_lag();
    if y_init.len() < start {
        return Err(Error::InsufficientData { needed: start, available: y_init.len() });
    }
    let n = u.len();
    let mut out: Vec<S> = Vec::with_capacity(n);
    out.extend_from_slice(&y_init[..start.min(n)]);
    for k in start..n {
        // only out[..k] is read at step k
        out.push(S::zero());
        let v = predict_at(s, theta, u, &out, k, mode).map_err(|_| Error::Divergence { step: k })?;
        if !v.center().is_finite() {
            return Err(Error::Divergence { step: k });
        }
        out[k] = v;
        if let Some(cap) = cap {
            let w = v.spread();
            if w > cap {
                return Ok(FreeRunReport { outputs: out, cap_exceeded: Some(CapExceeded { step: k, width: w }) });
            }
        }
    }
    Ok(FreeRunReport { outputs: out, cap_exceeded: None })
}

/// Ten times the range of the measured output.
pub fn default_width_cap(y: &[f64]) -> f64 {
    let (lo, hi) = y.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if lo.is_finite() {
        10.0 * (hi - lo)
    } else {
        0.0
    }
}
