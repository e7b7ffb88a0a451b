//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed. Built with `harness = false`.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use narxiv::ModelFile;
use narxiv_core::estimation::estimate;
use narxiv_core::linalg::{interval_least_squares, point_least_squares, solve_verified};
use narxiv_core::metrics::{rmse_interval, rmse_point};
use narxiv_core::model::{default_width_cap, free_run, free_run_capped, one_step_ahead, to_intervals};
use narxiv_core::selection::{select_structure, CandidateSpace};
use narxiv_core::signals::{add_uniform_noise, duffing_ueda_simulate, prbs, DuffingParams};
use narxiv_core::{
    Dataset, Error, EstimationResult, Interval, IntervalMatrix, Matrix, ModelStructure, PowerMode, SelectionConfig,
    SolverConfig, WideningPolicy,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- exact oracle

/// Exact value `m * 2^e`; every finite f64 is one.
#[derive(Clone, Debug)]
struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    fn of(x: f64) -> Dyadic {
        assert!(x.is_finite());
        if x == 0.0 {
            return Dyadic { m: BigInt::zero(), e: 0 };
        }
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let m = BigInt::from(mant);
        Dyadic { m: if x < 0.0 { -m } else { m }, e }
    }

    /// Mantissas of `self` and `other` over the common exponent.
    fn align(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.e.min(other.e);
        (&self.m << (self.e - e) as usize, &other.m << (other.e - e) as usize, e)
    }

    fn add(&self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(o);
        Dyadic { m: a + b, e }
    }

    fn sub(&self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(o);
        Dyadic { m: a - b, e }
    }

    fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic { m: &self.m * &o.m, e: self.e + o.e }
    }

    fn le(&self, o: &Dyadic) -> bool {
        let (a, b, _) = self.align(o);
        a <= b
    }
}

/// Exact rational `num / den` with `den > 0`.
struct Ratio {
    num: Dyadic,
    den: Dyadic,
}

impl Ratio {
    fn new(num: Dyadic, den: Dyadic) -> Ratio {
        assert!(!den.m.is_zero());
        if den.m.sign() == Sign::Minus {
            Ratio { num: Dyadic { m: -num.m, e: num.e }, den: Dyadic { m: -den.m, e: den.e } }
        } else {
            Ratio { num, den }
        }
    }
}

fn encloses_ratio(i: &Interval, v: &Ratio) -> bool {
    Dyadic::of(i.lo()).mul(&v.den).le(&v.num) && v.num.le(&Dyadic::of(i.hi()).mul(&v.den))
}

fn random_endpoint(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.05) {
        return 0.0;
    }
    let m: f64 = rng.gen_range(1.0..2.0);
    let e: i32 = rng.gen_range(-20..20);
    let s = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    s * m * 2f64.powi(e)
}

fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    let a = random_endpoint(rng);
    let b = if rng.gen_bool(0.1) {
        a
    } else if rng.gen_bool(0.5) {
        // narrow interval around a
        a + a.abs() * rng.gen_range(0.0..1e-3) + f64::MIN_POSITIVE
    } else {
        random_endpoint(rng)
    };
    Interval::new(a.min(b), a.max(b)).unwrap()
}

fn member(rng: &mut ChaCha8Rng, x: &Interval) -> f64 {
    match rng.gen_range(0..4) {
        0 => x.lo(),
        1 => x.hi(),
        _ => (x.lo() + rng.gen::<f64>() * (x.hi() - x.lo())).clamp(x.lo(), x.hi()),
    }
}

// ------------------------------------------------------------------- criteria

fn enclosure_suite() -> Outcome {
    const N: usize = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut violations = [0usize; 5];
    let mut overflow = 0usize;
    for (op, bad) in violations.iter_mut().enumerate() {
        for _ in 0..N {
            let x = random_interval(&mut rng);
            let mut y = random_interval(&mut rng);
            if op == 3 {
                while y.contains_zero() {
                    y = random_interval(&mut rng);
                }
            }
            let (a, b) = (member(&mut rng, &x), member(&mut rng, &y));
            let (ra, rb) = (Dyadic::of(a), Dyadic::of(b));
            let (z, exact) = match op {
                0 => (x.add(y), Ratio::new(ra.add(&rb), Dyadic::of(1.0))),
                1 => (x.sub(y), Ratio::new(ra.sub(&rb), Dyadic::of(1.0))),
                2 => (x.mul(y), Ratio::new(ra.mul(&rb), Dyadic::of(1.0))),
                3 => (x.div(y), Ratio::new(ra, rb)),
                _ => {
                    let n = rng.gen_range(0..=6u32);
                    let p = (0..n).fold(Dyadic::of(1.0), |p, _| p.mul(&ra));
                    (x.power(n), Ratio::new(p, Dyadic::of(1.0)))
                }
            };
            match z {
                Ok(z) if encloses_ratio(&z, &exact) => {}
                Ok(_) => *bad += 1,
                Err(_) => overflow += 1,
            }
        }
    }
    let total: usize = violations.iter().sum();
    check(
        total == 0 && overflow == 0,
        format!("{N} triples per op for + - * / pow, violations {violations:?}, unexpected errors {overflow}"),
    )
}

fn subdistributivity_witness() -> Outcome {
    let x = Interval::new(0.0, 1.0).unwrap();
    let a = x.mul(Interval::ONE.sub(x).unwrap()).unwrap();
    let b = x.sub(x.mul(x).unwrap()).unwrap();
    let want_a = Interval::new(0.0, 1.0).unwrap();
    let want_b = Interval::new(-1.0, 1.0).unwrap();
    check(a == want_a && b == want_b, format!("X(1-X) = {a}, X - X*X = {b}"))
}

/// Integer form of row `[a_i | b_i]`: every entry times a common power of two.
fn integer_row(a: &Matrix<f64>, b: &[f64], i: usize) -> Vec<BigInt> {
    let n = a.cols();
    let d: Vec<Dyadic> = (0..=n).map(|j| Dyadic::of(if j < n { a.get(i, j) } else { b[i] })).collect();
    let e = d.iter().map(|v| v.e).min().unwrap();
    d.iter().map(|v| &v.m << (v.e - e) as usize).collect()
}

/// Exact solution `x_i = num_i / det` by fraction-free (Bareiss) elimination
/// and fraction-free back substitution; `None` if the system is singular.
fn exact_solve(a: &Matrix<f64>, b: &[f64]) -> Option<(Vec<BigInt>, BigInt)> {
    let n = a.rows();
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| integer_row(a, b, i)).collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = prev;
    let mut num = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &det * &m[i][n];
        for j in i + 1..n {
            acc -= &m[i][j] * &num[j];
        }
        num[i] = acc / &m[i][i];
    }
    Some((num, det))
}

/// `A num == det b`, checked exactly on the integer rows.
fn exact_residual_is_zero(a: &Matrix<f64>, b: &[f64], num: &[BigInt], det: &BigInt) -> bool {
    (0..a.rows()).all(|i| {
        let row = integer_row(a, b, i);
        let n = a.cols();
        let lhs = (0..n).fold(BigInt::zero(), |acc, j| acc + &row[j] * &num[j]);
        lhs == &row[n] * det
    })
}

fn random_system(rng: &mut ChaCha8Rng, n: usize) -> (IntervalMatrix, Vec<Interval>) {
    let dominant = rng.gen_bool(0.5);
    let width = rng.gen_range(0.0..0.01);
    let widen = |rng: &mut ChaCha8Rng, v: f64| {
        let r = v.abs() * width * rng.gen::<f64>();
        Interval::new(v - r, v + r).unwrap()
    };
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut v: f64 = rng.gen_range(-1.0..1.0);
            if dominant && i == j {
                v += n as f64 * v.signum();
            }
            row.push(widen(rng, v));
        }
        rows.push(row);
    }
    let mut b = Vec::with_capacity(n);
    for _ in 0..n {
        let v = rng.gen_range(-1.0..1.0);
        b.push(widen(rng, v));
    }
    (Matrix::from_rows(&rows).unwrap(), b)
}

fn verified_solve_containment() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in [3, 7, 10] {
        let (a, b) = random_system(&mut rng, n);
        let (am, bm) = (a.mid(), b.iter().map(Interval::midpoint).collect::<Vec<_>>());
        let (num, det) = exact_solve(&am, &bm).ok_or("oracle found a singular system")?;
        if !exact_residual_is_zero(&am, &bm, &num, &det) {
            return Err(format!("exact oracle self-check failed for n={n}"));
        }
    }
    let (mut verified, mut refused, mut violations, mut members) = (0, 0, 0, 0);
    let mut other_errors = Vec::new();
    for _ in 0..100 {
        let n = rng.gen_range(3..=10);
        let (a, b) = random_system(&mut rng, n);
        match solve_verified(&a, &b, &SolverConfig::default()) {
            Ok(x) => {
                verified += 1;
                for _ in 0..500 {
                    let am = Matrix::from_fn(n, n, |i, j| member(&mut rng, &a.get(i, j)));
                    let bm: Vec<f64> = b.iter().map(|v| member(&mut rng, v)).collect();
                    members += 1;
                    match exact_solve(&am, &bm) {
                        Some((num, det)) => {
                            let den = Dyadic { m: det, e: 0 };
                            let outside = num
                                .into_iter()
                                .zip(&x)
                                .any(|(v, xi)| !encloses_ratio(xi, &Ratio::new(Dyadic { m: v, e: 0 }, den.clone())));
                            if outside {
                                violations += 1;
                            }
                        }
                        // a singular member means the box cannot have been valid
                        None => violations += 1,
                    }
                }
            }
            Err(Error::VerificationFailed { .. }) | Err(Error::Singular) => refused += 1,
            Err(e) => other_errors.push(e.to_string()),
        }
    }
    check(
        violations == 0 && other_errors.is_empty() && verified > 0,
        format!(
            "{verified} verified, {refused} refused, {members} exact member solutions, {violations} outside; other errors {other_errors:?}"
        ),
    )
}

fn duffing_data() -> Dataset {
    let p = DuffingParams { amplitude: 1.2, noise: 0.01, noise_seed: 1, ..Default::default() };
    duffing_ueda_simulate(&p).unwrap()
}

struct Pipeline {
    validation: Dataset,
    model: EstimationResult,
}

fn duffing_pipeline() -> Result<Pipeline, Error> {
    let data = duffing_data();
    let (ident, validation) = data.split_at(data.len() / 2);
    let space = CandidateSpace { l: 3, n_y: 6, n_u: 0, d: 1 };
    let report = select_structure(&space, &ident, &SelectionConfig { max_terms: 30, ..Default::default() })?;
    let model = estimate(&ident, &report.chosen, WideningPolicy::Degenerate, &SolverConfig::default())?;
    Ok(Pipeline { validation, model })
}

fn interval_ls_containment() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut violations = 0;
    let mut errors = Vec::new();
    for case in 0..100 {
        let p = rng.gen_range(2..=6);
        let m = rng.gen_range(4 * p..=60);
        let psi = Matrix::from_fn(m, p, |_, _| rng.gen_range(-1.0..1.0));
        let truth: Vec<f64> = (0..p).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let y: Vec<f64> =
            (0..m).map(|i| (0..p).map(|j| psi.get(i, j) * truth[j]).sum::<f64>() + rng.gen_range(-0.1..0.1)).collect();
        let theta_p = point_least_squares(&psi, &y).unwrap();
        // every other problem gets widened data
        let r = if case % 2 == 0 { 0.0 } else { 1e-6 };
        let psi_i = psi.map(|&v| Interval::around(v, r).unwrap());
        let y_i: Vec<Interval> = y.iter().map(|&v| Interval::around(v, r).unwrap()).collect();
        match interval_least_squares(&psi_i, &y_i, &SolverConfig::default()) {
            Ok(t) => violations += theta_p.iter().zip(&t).filter(|(p, i)| !i.contains(**p)).count(),
            Err(e) => errors.push(e.to_string()),
        }
    }
    let duffing = match duffing_pipeline() {
        Ok(pl) => {
            let m = &pl.model;
            let bad = m.theta_point.iter().zip(&m.theta_interval).filter(|(p, i)| !i.contains(**p)).count();
            let finite = m.theta_interval.iter().all(|i| i.width().is_finite());
            violations += bad;
            format!("duffing {} parameters, {bad} outside, finite widths {finite}", m.theta_point.len())
        }
        Err(e) => {
            errors.push(format!("duffing: {e}"));
            String::new()
        }
    };
    check(
        violations == 0 && errors.is_empty(),
        format!("100 random problems + {duffing}; violations {violations}; errors {errors:?}"),
    )
}

fn selection_oracle() -> Outcome {
    let u = prbs(600, 9, 0x5a, 3, -1.0, 1.0).unwrap();
    let mut y = vec![0.0; u.len()];
    for k in 1..u.len() {
        y[k] = 0.5 * y[k - 1] + 0.3 * u[k - 1];
    }
    let data = Dataset::new("linear", 1.0, u, y).unwrap();
    let space = CandidateSpace { l: 2, n_y: 2, n_u: 2, d: 1 };
    let r = select_structure(&space, &data, &SelectionConfig { max_terms: 8, ..Default::default() })
        .map_err(|e| e.to_string())?;
    let mut top: Vec<String> = r.ranked_terms.iter().take(2).map(|t| t.term.to_string()).collect();
    top.sort();
    let cumulative = r.cumulative_err().get(1).copied().unwrap_or(0.0);
    let size = r.chosen.len();
    check(
        top == ["u(k-1)", "y(k-1)"] && cumulative >= 1.0 - 1e-9 && size == 2,
        format!("top two {top:?}, cumulative ERR {cumulative}, AIC picks {size} terms"),
    )
}

fn duffing_reproduction() -> Outcome {
    let pl = duffing_pipeline().map_err(|e| e.to_string())?;
    let s = &pl.model.structure;
    let (u, y) = (pl.validation.u(), pl.validation.y());
    let ml = s.max_lag();
    let osa = one_step_ahead(s, &pl.model.theta_point, u, y, PowerMode::Tight).map_err(|e| e.to_string())?;
    let point = rmse_point(&y[ml..], &osa).map_err(|e| e.to_string())?;
    let (ui, yi) = (to_intervals(u).unwrap(), to_intervals(y).unwrap());
    let osa_i = one_step_ahead(s, &pl.model.theta_interval, &ui, &yi, PowerMode::Tight).map_err(|e| e.to_string())?;
    let interval = rmse_interval(&yi[ml..], &osa_i).map_err(|e| e.to_string())?;
    check(
        point < 0.05 && interval.contains(point),
        format!("{} terms, one-step RMSE {point:.5}, interval RMSE {interval}", s.len()),
    )
}

fn free_run_blow_up() -> Outcome {
    let pl = duffing_pipeline().map_err(|e| e.to_string())?;
    let s = &pl.model.structure;
    let (u, y) = (pl.validation.u(), pl.validation.y());
    let ml = s.max_lag();
    let (ui, yi) = (to_intervals(u).unwrap(), to_intervals(y).unwrap());
    let cap = default_width_cap(y);
    let r = free_run_capped(s, &pl.model.theta_interval, &ui, &yi[..ml], PowerMode::Tight, cap)
        .map_err(|e| e.to_string())?;
    let widths: Vec<f64> = r.outputs.iter().map(|v| v.width()).collect();
    let monotone = widths.windows(2).all(|w| w[1] >= w[0]);
    let point = free_run(s, &pl.model.theta_point, u, &y[..ml], PowerMode::Tight).map_err(|e| e.to_string())?;
    let bounded = point.iter().all(|v| v.abs() < 10.0);
    let rmse = rmse_point(&y[ml..], &point[ml..]).map_err(|e| e.to_string())?;
    let step = r.cap_exceeded.map(|c| c.step);
    check(
        monotone && step.is_some() && bounded && rmse < 0.5,
        format!("interval widths non-decreasing {monotone}, cap {cap:.3} exceeded at step {step:?}; point free run bounded {bounded}, RMSE {rmse:.5}"),
    )
}

fn rmse_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst_mean, mut perfect_ok, mut contained) = (0.0f64, true, 0);
    for _ in 0..100 {
        let n = rng.gen_range(2..200);
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let h: Vec<f64> = y.iter().map(|v| v + rng.gen_range(-0.5..0.5)).collect();
        let mean = y.iter().sum::<f64>() / n as f64;
        worst_mean = worst_mean.max((rmse_point(&y, &vec![mean; n]).unwrap() - 1.0).abs());
        perfect_ok &= rmse_point(&y, &y).unwrap() == 0.0;
        let p = rmse_point(&y, &h).unwrap();
        let i = rmse_interval(&to_intervals(&y).unwrap(), &to_intervals(&h).unwrap()).unwrap();
        contained += i.contains(p) as usize;
    }
    check(
        worst_mean <= 1e-12 && perfect_ok && contained == 100,
        format!("mean predictor |RMSE-1| <= {worst_mean:e}, perfect predictor zero {perfect_ok}, {contained}/100 interval RMSEs contain the point RMSE"),
    )
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn surrogate(s: &ModelStructure) -> Dataset {
    if s.n_u() == 0 {
        return duffing_data();
    }
    let u = prbs(1000, 9, 1, 1, -1.0, 1.0).unwrap();
    let mut y = vec![0.0; u.len()];
    for k in 1..u.len() {
        y[k] = 0.5 * y[k - 1] + 0.3 * u[k - 1];
    }
    add_uniform_noise(&mut y, 0.01, 1).unwrap();
    Dataset::new("surrogate", 1.0, u, y).unwrap()
}

fn fixture_round_trip() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for name in ["rlc.model", "motor_generator.model", "duffing_ueda.model"] {
        let path = fixture_dir().join(name);
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let m: ModelFile = text.parse().map_err(|e| format!("{name}: {e}"))?;
        let identical = m.to_string() == text;
        let coef = m.coefficients.as_ref().ok_or(format!("{name}: no coefficients"))?;
        let d = surrogate(&m.structure);
        let (ui, yi) = (to_intervals(d.u()).unwrap(), to_intervals(d.y()).unwrap());
        let point = one_step_ahead(&m.structure, &coef.point_or_midpoint(), d.u(), d.y(), PowerMode::Tight);
        let interval = one_step_ahead(&m.structure, &coef.interval, &ui, &yi, PowerMode::Tight);
        let finite = match (&point, &interval) {
            (Ok(p), Ok(i)) => p.iter().all(|v| v.is_finite()) && i.iter().all(|v| v.width().is_finite()),
            _ => false,
        };
        ok &= identical && finite;
        notes
            .push(format!("{name}: {} terms, byte-identical {identical}, finite one-step {finite}", m.structure.len()));
    }
    check(ok, notes.join("; "))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("enclosure property suite", Duration::from_secs(30), enclosure_suite),
        ("subdistributivity witness", Duration::from_secs(1), subdistributivity_witness),
        ("verified solve containment", Duration::from_secs(60), verified_solve_containment),
        ("interval LS containment", Duration::from_secs(60), interval_ls_containment),
        ("structure-selection oracle", Duration::from_secs(5), selection_oracle),
        ("Duffing-Ueda reproduction", Duration::from_secs(120), duffing_reproduction),
        ("free-run blow-up diagnostic", Duration::from_secs(60), free_run_blow_up),
        ("RMSE identities", Duration::from_secs(5), rmse_identities),
        ("fixture round-trip", Duration::from_secs(10), fixture_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let elapsed = t.elapsed();
        let in_time = elapsed <= *budget;
        let (pass, detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        failed += !pass as usize;
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {verdict} {name} [{:.2}s / {}s budget] {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
