//! Structure selection: forward orthogonal least squares ranked by the error
//! reduction ratio (ERR), with model size chosen by Akaike's criterion.
//!
//! Selection runs in point arithmetic only.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{point_least_squares, residual_sum_of_squares};
use crate::model::{candidate_terms, regressors_from, Dataset, ModelStructure, RegressorTerm};
use crate::scalar::PowerMode;

/// Relative norm below which an orthogonalised candidate is treated as
/// collinear with the terms already chosen.
pub const COLLINEAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RankedTerm {
    pub term: RegressorTerm,
    /// Fraction of `<y, y>` explained by this term's orthogonalised column.
    pub err: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rows shared by every candidate: start after the longest candidate lag.
fn candidate_regression(candidates: &[RegressorTerm], data: &Dataset) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let start = candidates.iter().map(RegressorTerm::max_lag).max().unwrap_or(0);
    let reg = regressors_from(candidates, data.u(), data.y(), start, PowerMode::Tight)?;
    let cols = (0..candidates.len()).map(|j| reg.matrix.column(j)).collect();
    Ok((cols, reg.target))
}

/// Greedy forward selection of up to `max_terms` candidates.
///
/// At each step every remaining candidate is orthogonal to the chosen ones;
/// the one with the largest `<w,y>^2 / (<w,w><y,y>)` is taken (lowest index
/// on ties) and the rest are orthogonalised against it.
pub fn err_rank(candidates: &[RegressorTerm], data: &Dataset, max_terms: usize) -> Result<Vec<RankedTerm>> {
    let (cols, y) = candidate_regression(candidates, data)?;
    rank_columns(candidates, cols, &y, max_terms)
}

fn rank_columns(
    candidates: &[RegressorTerm],
    mut w: Vec<Vec<f64>>,
    y: &[f64],
    max_terms: usize,
) -> Result<Vec<RankedTerm>> {
    let rows = y.len();
    let wanted = max_terms.min(candidates.len());
    if rows <= wanted {
        return Err(Error::InsufficientData { needed: wanted, available: rows });
    }
    let yy = dot(y, y);
    if yy == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    let orig_norm2: Vec<f64> = w.iter().map(|c| dot(c, c)).collect();
    let mut remaining: Vec<usize> = (0..candidates.len()).collect();
    let mut ranked = Vec::with_capacity(wanted);

    while ranked.len() < wanted && !remaining.is_empty() {
        let mut best: Option<(usize, f64)> = None;
        remaining.retain(|&j| {
            let ww = dot(&w[j], &w[j]);
            ww > COLLINEAR_TOL * COLLINEAR_TOL * orig_norm2[j] && ww > 0.0
        });
        for (pos, &j) in remaining.iter().enumerate() {
            let ww = dot(&w[j], &w[j]);
            let wy = dot(&w[j], y);
            let err = (wy * wy / (ww * yy)).clamp(0.0, 1.0);
            if best.is_none_or(|(_, e)| err > e) {
                best = Some((pos, err));
            }
        }
        let Some((pos, err)) = best else { break };
        let j = remaining.remove(pos);
        let q = core::mem::take(&mut w[j]);
        let qq = dot(&q, &q);
        for &r in &remaining {
            let f = dot(&q, &w[r]) / qq;
            for (a, b) in w[r].iter_mut().zip(&q) {
                *a -= f * b;
            }
        }
        ranked.push(RankedTerm { term: candidates[j].clone(), err });
    }
    Ok(ranked)
}

/// Akaike's criterion; `perfect_fit` marks a zero residual, reported with a
/// value of negative infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aic {
    pub value: f64,
    pub perfect_fit: bool,
}

/// `N ln(rss / N) + 2 n_params`
pub fn aic(rss: f64, n_params: usize, n_samples: usize) -> Result<Aic> {
    if n_samples <= n_params {
        return Err(Error::InsufficientData { needed: n_params, available: n_samples });
    }
    if rss.is_nan() {
        return Err(Error::InvalidArgument("residual sum of squares is NaN"));
    }
    if rss <= 0.0 {
        return Ok(Aic { value: f64::NEG_INFINITY, perfect_fit: true });
    }
    let n = n_samples as f64;
    Ok(Aic { value: n * libm::log(rss / n) + 2.0 * n_params as f64, perfect_fit: false })
}

/// Bounds of the candidate regressor space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateSpace {
    pub l: u32,
    pub n_y: u32,
    pub n_u: u32,
    pub d: u32,
}

impl CandidateSpace {
    pub fn candidates(&self) -> Vec<RegressorTerm> {
        candidate_terms(self.l, self.n_y, self.n_u, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionConfig {
    pub max_terms: usize,
    /// A prefix fit with `rss <= perfect_fit_tol * <y,y>` counts as exact;
    /// on noise-free data this keeps rounding-level residuals from rewarding
    /// extra terms.
    pub perfect_fit_tol: f64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig { max_terms: 20, perfect_fit_tol: 1e-20 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    pub ranked_terms: Vec<RankedTerm>,
    /// `(n_terms, aic)` for every prefix of the ranking.
    pub aic_trace: Vec<(usize, Aic)>,
    pub chosen: ModelStructure,
}

impl SelectionReport {
    pub fn cumulative_err(&self) -> Vec<f64> {
        self.ranked_terms
            .iter()
            .scan(0.0, |acc, r| {
                *acc += r.err;
                Some(*acc)
            })
            .collect()
    }
}

/// ERR ranking, a point least-squares fit per prefix, and the first global
/// AIC minimum.
pub fn select_structure(space: &CandidateSpace, data: &Dataset, config: &SelectionConfig) -> Result<SelectionReport> {
    let candidates = space.candidates();
    let (cols, y) = candidate_regression(&candidates, data)?;
    let ranked = rank_columns(&candidates, cols.clone(), &y, config.max_terms)?;
    if ranked.is_empty() {
        return Err(Error::InvalidArgument("no candidate terms survived ranking"));
    }
    let index_of = |t: &RegressorTerm| candidates.iter().position(|c| c == t).expect("ranked term is a candidate");
    let order: Vec<usize> = ranked.iter().map(|r| index_of(&r.term)).collect();
    let yy = dot(&y, &y);
    let n = y.len();

    let mut trace = Vec::with_capacity(ranked.len());
    for k in 1..=ranked.len() {
        let psi = crate::linalg::Matrix::from_fn(n, k, |i, j| cols[order[j]][i]);
        let theta = point_least_squares(&psi, &y)?;
        let mut rss = residual_sum_of_squares(&psi, &y, &theta)?;
        if rss <= config.perfect_fit_tol * yy {
            rss = 0.0;
        }
        trace.push((k, aic(rss, k, n)?));
    }
    let best = trace
        .iter()
        .fold(None::<(usize, f64)>, |b, &(k, a)| match b {
            Some((_, v)) if a.value >= v => b,
            _ => Some((k, a.value)),
        })
        .map(|(k, _)| k)
        .unwrap_or(1);
    let terms = ranked[..best].iter().map(|r| r.term.clone()).collect();
    let chosen = ModelStructure::new(terms, space.n_y, space.n_u, space.d, space.l)?;
    Ok(SelectionReport { ranked_terms: ranked, aic_trace: trace, chosen })
}
