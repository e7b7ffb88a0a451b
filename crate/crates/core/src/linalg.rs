//! Dense matrices over point or interval scalars, point least squares and a
//! verified interval linear solver.
//!
//! Dot products always accumulate left to right starting from zero, in both
//! point and interval arithmetic, so results are reproducible bit for bit.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntervalMatrix = Matrix<Interval>;
pub type IntervalVector = Vec<Interval>;

impl<T: Copy> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from equally long rows.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map<U: Copy>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Sub-matrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }
}

impl IntervalMatrix {
    pub fn from_point(m: &Matrix<f64>) -> Result<Self> {
        let data = m.data.iter().map(|&x| Interval::point(x)).collect::<core::result::Result<_, _>>()?;
        Ok(Matrix { rows: m.rows, cols: m.cols, data })
    }

    pub fn mid(&self) -> Matrix<f64> {
        self.map(Interval::midpoint)
    }
}

/// Left-to-right dot product.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> Result<S> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), found: b.len() });
    }
    let mut acc = S::zero();
    for (&x, &y) in a.iter().zip(b) {
        acc = acc.try_add(x.try_mul(y)?)?;
    }
    Ok(acc)
}

/// Matrix product; each entry is a left-to-right dot product.
pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch { expected: (a.cols, b.cols), found: b.shape() });
    }
    let bt = b.transpose();
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            data.push(dot(a.row(i), bt.row(j))?);
        }
    }
    Ok(Matrix { rows: a.rows, cols: b.cols, data })
}

pub fn mat_vec<S: Scalar>(a: &Matrix<S>, x: &[S]) -> Result<Vec<S>> {
    if a.cols != x.len() {
        return Err(Error::DimensionMismatch { expected: (a.cols, 1), found: (x.len(), 1) });
    }
    (0..a.rows).map(|i| dot(a.row(i), x)).collect()
}

/// `A^T A` and `A^T y` with the same left-to-right accumulation as [`dot`].
pub fn normal_equations<S: Scalar>(a: &Matrix<S>, y: &[S]) -> Result<(Matrix<S>, Vec<S>)> {
    if a.rows != y.len() {
        return Err(Error::LengthMismatch { expected: a.rows, found: y.len() });
    }
    let at = a.transpose();
    let g = mat_mul(&at, a)?;
    let h = mat_vec(&at, y)?;
    Ok((g, h))
}

/// Inverse of a square point matrix by Gaussian elimination with partial
/// pivoting.
pub fn inverse(a: &Matrix<f64>) -> Result<Matrix<f64>> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::DimensionMismatch { expected: (n, n), found: a.shape() });
    }
    let scale = a.data.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Singular);
    }
    let tol = f64::EPSILON * scale * n as f64;
    let mut m = a.clone();
    let mut inv: Matrix<f64> = Matrix::identity(n);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m.get(i, c).abs().total_cmp(&m.get(j, c).abs())).unwrap_or(c);
        let pivot = m.get(p, c);
        if pivot.abs() <= tol {
            return Err(Error::Singular);
        }
        if p != c {
            for j in 0..n {
                m.data.swap(p * n + j, c * n + j);
                inv.data.swap(p * n + j, c * n + j);
            }
        }
        for j in 0..n {
            m.set(c, j, m.get(c, j) / pivot);
            inv.set(c, j, inv.get(c, j) / pivot);
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = m.get(i, c);
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                m.set(i, j, m.get(i, j) - f * m.get(c, j));
                inv.set(i, j, inv.get(i, j) - f * inv.get(c, j));
            }
        }
    }
    if inv.data.iter().any(|x| !x.is_finite()) {
        return Err(Error::Singular);
    }
    Ok(inv)
}

/// Relative threshold on `|R_jj|` below which a column counts as dependent.
pub const RANK_TOL: f64 = 1e-10;

/// Least-squares solution of `psi * theta ~ y` by Householder QR.
pub fn point_least_squares(psi: &Matrix<f64>, y: &[f64]) -> Result<Vec<f64>> {
    let (m, n) = psi.shape();
    if y.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: y.len() });
    }
    if m < n || n == 0 {
        return Err(Error::InsufficientData { needed: n, available: m });
    }
    // column-major working copy
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| psi.column(j)).collect();
    let mut rhs = y.to_vec();
    let mut diag = vec![0.0; n];
    for k in 0..n {
        let norm = libm::sqrt(cols[k][k..].iter().map(|x| x * x).sum::<f64>());
        let alpha = if cols[k][k] > 0.0 { -norm } else { norm };
        diag[k] = alpha;
        if norm == 0.0 {
            continue;
        }
        let mut v: Vec<f64> = cols[k][k..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for col in cols.iter_mut().skip(k + 1) {
            let s: f64 = v.iter().zip(&col[k..]).map(|(a, b)| a * b).sum();
            let f = 2.0 * s / vv;
            for (c, vi) in col[k..].iter_mut().zip(&v) {
                *c -= f * vi;
            }
        }
        let s: f64 = v.iter().zip(&rhs[k..]).map(|(a, b)| a * b).sum();
        let f = 2.0 * s / vv;
        for (c, vi) in rhs[k..].iter_mut().zip(&v) {
            *c -= f * vi;
        }
    }
    let largest = diag.iter().fold(0.0f64, |a, d| a.max(d.abs()));
    for (j, d) in diag.iter().enumerate() {
        // NaN counts as deficient.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(d.abs() > RANK_TOL * largest) {
            return Err(Error::RankDeficient { column: j });
        }
    }
    let mut theta = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = rhs[k];
        for j in k + 1..n {
            s -= cols[j][k] * theta[j];
        }
        theta[k] = s / diag[k];
    }
    Ok(theta)
}

/// Residual sum of squares `||y - psi*theta||^2` in point arithmetic.
pub fn residual_sum_of_squares(psi: &Matrix<f64>, y: &[f64], theta: &[f64]) -> Result<f64> {
    let fit = mat_vec(psi, theta)?;
    Ok(y.iter().zip(&fit).map(|(a, b)| (a - b) * (a - b)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Enclosure sweeps before giving up.
    pub max_iterations: usize,
    /// Absolute epsilon-inflation added per sweep.
    pub inflation_abs: f64,
    /// Inflation relative to the magnitude of each component.
    pub inflation_rel: f64,
    /// Extra contraction sweeps applied once a box is verified.
    pub tighten_sweeps: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_iterations: 15, inflation_abs: 1e-12, inflation_rel: 1e-8, tighten_sweeps: 2 }
    }
}

/// `z + C*Y`
fn krawczyk_map(z: &[Interval], c: &IntervalMatrix, y: &[Interval]) -> Result<IntervalVector> {
    let cy = mat_vec(c, y)?;
    z.iter().zip(&cy).map(|(a, b)| a.add(*b).map_err(Error::from)).collect()
}

fn all_interior(inner: &[Interval], outer: &[Interval]) -> bool {
    inner.iter().zip(outer).all(|(a, b)| a.is_interior(b))
}

/// Enclosure of the solution set of the interval system `A x = b`.
///
/// Writes the solution as `x~ + e` with `x~` an approximate midpoint
/// solution; the error satisfies `e = R(b - A x~) + (I - R A) e` for the
/// approximate inverse `R` of `mid(A)`. A candidate box `Y` with
/// `z + C*Y` strictly inside `Y` proves every member `A~` nonsingular and
/// encloses every member solution in `x~ + (z + C*Y)`.
///
/// Candidates come from the epsilon-inflated fixed-point iteration; if that
/// stalls, a box built from the bound `||e|| <= ||z|| / (1 - ||C||)` is
/// tried with the same interior test. Nothing unverified is ever returned.
pub fn solve_verified(a: &IntervalMatrix, b: &[Interval], config: &SolverConfig) -> Result<IntervalVector> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::DimensionMismatch { expected: (n, n), found: a.shape() });
    }
    if b.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: b.len() });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let am = a.mid();
    let bm: Vec<f64> = b.iter().map(Interval::midpoint).collect();
    let r = inverse(&am)?;

    let mut xt = mat_vec(&r, &bm)?;
    for _ in 0..2 {
        let ax = mat_vec(&am, &xt)?;
        let res: Vec<f64> = bm.iter().zip(&ax).map(|(p, q)| p - q).collect();
        let dx = mat_vec(&r, &res)?;
        let next: Vec<f64> = xt.iter().zip(&dx).map(|(p, q)| p + q).collect();
        if next.iter().all(|v| v.is_finite()) {
            xt = next;
        }
    }

    let r_iv = IntervalMatrix::from_point(&r)?;
    let xt_iv: IntervalVector = xt.iter().map(|&v| Interval::point(v)).collect::<core::result::Result<_, _>>()?;
    let ax = mat_vec(a, &xt_iv)?;
    let residual: IntervalVector = b.iter().zip(&ax).map(|(p, q)| p.sub(*q)).collect::<core::result::Result<_, _>>()?;
    let z = mat_vec(&r_iv, &residual)?;
    let ra = mat_mul(&r_iv, a)?;
    let mut c = ra.clone();
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { Interval::ONE } else { Interval::ZERO };
            c.set(i, j, id.sub(ra.get(i, j))?);
        }
    }

    // e in E implies e in z + C*E, so contraction sweeps stay valid.
    let finish = |mut e: IntervalVector| -> Result<IntervalVector> {
        for _ in 0..config.tighten_sweeps {
            let next = krawczyk_map(&z, &c, &e)?;
            match next.iter().zip(&e).map(|(p, q)| p.intersect(q)).collect::<Option<IntervalVector>>() {
                Some(t) => e = t,
                None => break,
            }
        }
        xt_iv.iter().zip(&e).map(|(p, q)| p.add(*q).map_err(Error::from)).collect()
    };

    let mut x = z.clone();
    for _ in 0..config.max_iterations {
        let y: IntervalVector = x
            .iter()
            .map(|v| v.inflate(config.inflation_abs, config.inflation_rel))
            .collect::<core::result::Result<_, _>>()?;
        let next = krawczyk_map(&z, &c, &y)?;
        if all_interior(&next, &y) {
            return finish(next);
        }
        x = next;
    }

    // Norm-bound candidate: ||C||_inf < 1 gives ||e||_inf <= ||z||_inf / (1 - ||C||_inf).
    let c_norm =
        (0..n).map(|i| c.row(i).iter().fold(0.0, |s, v| crate::round::add_up(s, v.mag()))).fold(0.0f64, f64::max);
    if c_norm < 1.0 {
        let z_norm = z.iter().fold(0.0f64, |m, v| m.max(v.mag()));
        let beta = crate::round::div_up(z_norm, crate::round::sub_down(1.0, c_norm));
        let beta = crate::round::add_up(
            crate::round::mul_up(beta, 1.0 + config.inflation_rel.max(f64::EPSILON)),
            config.inflation_abs.max(f64::MIN_POSITIVE),
        );
        let y = vec![Interval::new(-beta, beta)?; n];
        let next = krawczyk_map(&z, &c, &y)?;
        if all_interior(&next, &y) {
            return finish(next);
        }
    }
    Err(Error::VerificationFailed { iterations: config.max_iterations })
}

/// Verified enclosure of the least-squares solution of every member of the
/// interval problem `psi * theta ~ y`, through the normal equations
/// `(psi^T psi) theta = psi^T y` evaluated in interval arithmetic.
pub fn interval_least_squares(psi: &IntervalMatrix, y: &[Interval], config: &SolverConfig) -> Result<IntervalVector> {
    let (m, n) = psi.shape();
    if y.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: y.len() });
    }
    if m < n || n == 0 {
        return Err(Error::InsufficientData { needed: n, available: m });
    }
    // rank check on the midpoint problem
    let ym: Vec<f64> = y.iter().map(Interval::midpoint).collect();
    point_least_squares(&psi.mid(), &ym)?;
    let (g, h) = normal_equations(psi, y)?;
    solve_verified(&g, &h, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn degenerate(m: &Matrix<f64>) -> IntervalMatrix {
        IntervalMatrix::from_point(m).unwrap()
    }

    fn points(v: &[f64]) -> IntervalVector {
        v.iter().map(|&x| Interval::point(x).unwrap()).collect()
    }

    #[test]
    fn mat_mul_examples() {
        let a = Matrix::new(1, 1, vec![iv(-1.0, 2.0)]).unwrap();
        let b = Matrix::new(1, 1, vec![iv(3.0, 4.0)]).unwrap();
        assert_eq!(mat_mul(&a, &b).unwrap().get(0, 0), iv(-4.0, 8.0));

        let bp = Matrix::from_fn(3, 2, |i, j| (i as f64 + 1.0) * 0.1 - j as f64 * 0.7);
        let id: IntervalMatrix = Matrix::identity(3);
        let prod = mat_mul(&id, &degenerate(&bp)).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                assert!(prod.get(i, j).contains(bp.get(i, j)));
            }
        }
        assert!(matches!(mat_mul(&id, &id.select_columns(&[0, 1]).transpose()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn degenerate_mat_mul_encloses_point_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Matrix::from_fn(4, 5, |_, _| rng.gen_range(-2.0..2.0));
        let b = Matrix::from_fn(5, 3, |_, _| rng.gen_range(-2.0..2.0));
        let p = mat_mul(&a, &b).unwrap();
        let q = mat_mul(&degenerate(&a), &degenerate(&b)).unwrap();
        for (x, y) in p.data().iter().zip(q.data()) {
            assert!(y.contains(*x));
            assert!(y.width() <= 1e-14);
        }
    }

    #[test]
    fn inverse_and_singularity() {
        let a = Matrix::new(2, 2, vec![4.0, 7.0, 2.0, 6.0]).unwrap();
        let inv = inverse(&a).unwrap();
        let prod = mat_mul(&a, &inv).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((prod.get(i, j) - e).abs() < 1e-14);
            }
        }
        let s = Matrix::new(2, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        assert_eq!(inverse(&s), Err(Error::Singular));
    }

    #[test]
    fn solve_identity_and_small_system() {
        let id: IntervalMatrix = Matrix::identity(3);
        let b = vec![iv(1.0, 2.0), iv(-0.5, 0.5), iv(3.0, 3.0)];
        let x = solve_verified(&id, &b, &SolverConfig::default()).unwrap();
        for (xi, bi) in x.iter().zip(&b) {
            assert!(bi.is_subset(xi));
        }

        let a = Matrix::new(2, 2, vec![1.0, 1.0, 1.0, -1.0]).unwrap();
        let x = solve_verified(&degenerate(&a), &points(&[3.0, 1.0]), &SolverConfig::default()).unwrap();
        assert!(x[0].contains(2.0) && x[1].contains(1.0));
        assert!(x[0].width() < 1e-12 && x[1].width() < 1e-12);
    }

    #[test]
    fn solve_rejects_singular_and_bad_shapes() {
        let s = Matrix::new(2, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        assert_eq!(
            solve_verified(&degenerate(&s), &points(&[1.0, 1.0]), &SolverConfig::default()),
            Err(Error::Singular)
        );
        let r = Matrix::filled(2, 3, Interval::ONE);
        assert!(solve_verified(&r, &points(&[1.0, 1.0]), &SolverConfig::default()).is_err());
    }

    #[test]
    fn solve_fails_loudly_when_members_may_be_singular() {
        // [[1,1],[1,[0.5,1.5]]] contains the singular [[1,1],[1,1]].
        let a = Matrix::new(2, 2, vec![Interval::ONE, Interval::ONE, Interval::ONE, iv(0.5, 3.5)]).unwrap();
        let r = solve_verified(&a, &points(&[1.0, 2.0]), &SolverConfig::default());
        assert!(matches!(r, Err(Error::VerificationFailed { .. }) | Err(Error::Singular)), "{r:?}");
    }

    /// Gaussian elimination in point arithmetic as an independent oracle.
    fn solve_point(a: &Matrix<f64>, b: &[f64]) -> Vec<f64> {
        let inv = inverse(a).unwrap();
        mat_vec(&inv, b).unwrap()
    }

    #[test]
    fn widened_system_contains_sampled_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 3;
        let base = Matrix::from_fn(n, n, |i, j| if i == j { 4.0 } else { rng.gen_range(-1.0..1.0) });
        let a = base.map(|&x| Interval::around(x, 0.01 * x.abs()).unwrap());
        let b: IntervalVector = (0..n).map(|_| Interval::point(rng.gen_range(-3.0..3.0)).unwrap()).collect();
        let x = solve_verified(&a, &b, &SolverConfig::default()).unwrap();
        for _ in 0..1000 {
            let am = a.map(|v| rng.gen_range(v.lo()..=v.hi()));
            let bm: Vec<f64> = b.iter().map(|v| v.midpoint()).collect();
            let s = solve_point(&am, &bm);
            for (xi, si) in x.iter().zip(&s) {
                // point oracle carries its own rounding; allow a relative slack
                let slack = 1e-12 * si.abs().max(1.0);
                assert!(xi.lo() - slack <= *si && *si <= xi.hi() + slack);
            }
        }
    }

    #[test]
    fn least_squares_examples() {
        let id = Matrix::<f64>::identity(3);
        assert_eq!(point_least_squares(&id, &[1.0, -2.0, 0.5]).unwrap(), vec![1.0, -2.0, 0.5]);
        let col = Matrix::new(3, 1, vec![1.0, 2.0, 3.0]).unwrap();
        let t = point_least_squares(&col, &[2.0, 4.0, 6.0]).unwrap();
        assert!((t[0] - 2.0).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = Matrix::from_fn(30, 4, |_, _| rng.gen_range(-1.0..1.0));
        let truth = [0.3, -1.2, 2.5, 0.01];
        let y = mat_vec(&psi, &truth).unwrap();
        let t = point_least_squares(&psi, &y).unwrap();
        for (a, b) in t.iter().zip(&truth) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn least_squares_rank_errors() {
        let psi = Matrix::from_fn(5, 2, |i, _| i as f64);
        assert_eq!(point_least_squares(&psi, &[0.0; 5]), Err(Error::RankDeficient { column: 1 }));
        let short = Matrix::<f64>::identity(2).select_columns(&[0, 1, 0]);
        assert!(matches!(point_least_squares(&short, &[0.0; 2]), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn interval_least_squares_degenerate_contains_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let psi = Matrix::from_fn(25, 3, |_, _| rng.gen_range(-1.0..1.0));
        let y: Vec<f64> = (0..25).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let p = point_least_squares(&psi, &y).unwrap();
        let t = interval_least_squares(&degenerate(&psi), &points(&y), &SolverConfig::default()).unwrap();
        for (ti, pi) in t.iter().zip(&p) {
            assert!(ti.contains(*pi), "{ti} vs {pi}");
            assert!(ti.width() <= 1e-8 * pi.abs().max(1.0));
        }
    }

    #[test]
    fn identity_design_interval_least_squares() {
        let id = Matrix::<f64>::identity(3);
        let y = [1.0, 2.0, 3.0];
        let t = interval_least_squares(&degenerate(&id), &points(&y), &SolverConfig::default()).unwrap();
        let p = point_least_squares(&id, &y).unwrap();
        for (ti, pi) in t.iter().zip(&p) {
            assert!(ti.contains(*pi));
        }
    }
}
