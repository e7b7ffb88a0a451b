//! Excitation signals and synthetic data.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::Dataset;

/// Feedback taps (1-based register positions) of a maximal-length Fibonacci
/// LFSR for each supported register size.
pub fn maximal_taps(bits: u32) -> Option<&'static [u32]> {
    Some(match bits {
        2 => &[2, 1],
        3 => &[3, 2],
        4 => &[4, 3],
        5 => &[5, 3],
        6 => &[6, 5],
        7 => &[7, 6],
        8 => &[8, 6, 5, 4],
        9 => &[9, 5],
        10 => &[10, 7],
        11 => &[11, 9],
        12 => &[12, 11, 10, 4],
        13 => &[13, 12, 11, 8],
        14 => &[14, 13, 12, 2],
        15 => &[15, 14],
        16 => &[16, 15, 13, 4],
        _ => return None,
    })
}

#[derive(Debug, Clone)]
pub struct Lfsr {
    state: u32,
    bits: u32,
    taps: &'static [u32],
}

impl Lfsr {
    /// `seed` is reduced to the low `bits` bits and must stay non-zero.
    pub fn new(bits: u32, seed: u32) -> Result<Self> {
        let taps = maximal_taps(bits).ok_or(Error::InvalidArgument("unsupported PRBS register size (2..=16)"))?;
        let state = seed & ((1u32 << bits) - 1);
        if state == 0 {
            return Err(Error::InvalidArgument("PRBS seed must be non-zero in the register bits"));
        }
        Ok(Lfsr { state, bits, taps })
    }

    pub fn state(&self) -> u32 {
        self.state
    }

    /// Shifts once and returns the bit leaving the register.
    pub fn next_bit(&mut self) -> bool {
        let feedback = self.taps.iter().fold(0, |acc, &t| acc ^ (self.state >> (t - 1)) & 1);
        let out = self.state >> (self.bits - 1) & 1;
        self.state = ((self.state << 1) | feedback) & ((1u32 << self.bits) - 1);
        out == 1
    }
}

/// `length` samples of a maximal-length PRBS taking values in `{low, high}`,
/// each register bit held for `hold` samples.
pub fn prbs(length: usize, bits: u32, seed: u32, hold: usize, low: f64, high: f64) -> Result<Vec<f64>> {
    if hold == 0 {
        return Err(Error::InvalidArgument("PRBS hold must be at least one sample"));
    }
    let mut reg = Lfsr::new(bits, seed)?;
    let mut out = Vec::with_capacity(length);
    while out.len() < length {
        let v = if reg.next_bit() { high } else { low };
        let n = hold.min(length - out.len());
        out.extend(core::iter::repeat_n(v, n));
    }
    Ok(out)
}

/// Adds independent `U[-amplitude, amplitude]` noise from a seeded ChaCha
/// stream; zero amplitude leaves `v` untouched.
pub fn add_uniform_noise(v: &mut [f64], amplitude: f64, seed: u64) -> Result<()> {
    if !(amplitude >= 0.0 && amplitude.is_finite()) {
        return Err(Error::InvalidArgument("noise amplitude must be finite and non-negative"));
    }
    if amplitude > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for x in v {
            *x += rng.gen_range(-amplitude..=amplitude);
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuffingParams {
    pub k: f64,
    pub mu: f64,
    pub amplitude: f64,
    /// Upper bound on the integration step; the actual step divides the
    /// sampling interval exactly.
    pub dt: f64,
    pub n_periods: usize,
    pub samples_per_period: usize,
    pub transient_periods: usize,
    pub y0: f64,
    pub v0: f64,
    /// Half-width of uniform measurement noise added to the sampled output.
    pub noise: f64,
    pub noise_seed: u64,
}

impl Default for DuffingParams {
    fn default() -> Self {
        DuffingParams {
            k: 0.1,
            mu: 1.0,
            amplitude: 1.2,
            dt: 0.01,
            n_periods: 100,
            samples_per_period: 20,
            transient_periods: 50,
            y0: 0.0,
            v0: 0.0,
            noise: 0.0,
            noise_seed: 0,
        }
    }
}

/// One classical fourth-order Runge-Kutta step of `x' = f(t, x)`.
pub fn rk4_step(f: impl Fn(f64, [f64; 2]) -> [f64; 2], t: f64, x: [f64; 2], h: f64) -> [f64; 2] {
    let add = |a: [f64; 2], b: [f64; 2], s: f64| [a[0] + s * b[0], a[1] + s * b[1]];
    let k1 = f(t, x);
    let k2 = f(t + h / 2.0, add(x, k1, h / 2.0));
    let k3 = f(t + h / 2.0, add(x, k2, h / 2.0));
    let k4 = f(t + h, add(x, k3, h));
    [
        x[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        x[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Integrates `y'' + k y' + mu y^3 = A cos(t)` and samples it.
///
/// Time is zero at the first retained sample; the transient runs over the
/// preceding `transient_periods` forcing periods. `u` holds the forcing at
/// each sample instant.
pub fn duffing_ueda_simulate(p: &DuffingParams) -> Result<Dataset> {
    if !(p.dt > 0.0 && p.dt.is_finite()) {
        return Err(Error::InvalidArgument("integration step must be positive"));
    }
    if p.samples_per_period == 0 || p.n_periods == 0 {
        return Err(Error::InvalidArgument("need at least one period and one sample per period"));
    }
    let ts = 2.0 * PI / p.samples_per_period as f64;
    let substeps = libm::ceil(ts / p.dt).max(1.0) as usize;
    let h = ts / substeps as f64;
    let (k, mu, a) = (p.k, p.mu, p.amplitude);
    let f = |t: f64, x: [f64; 2]| [x[1], a * libm::cos(t) - k * x[1] - mu * x[0] * x[0] * x[0]];

    let skip = p.transient_periods * p.samples_per_period;
    let total = skip + p.n_periods * p.samples_per_period;
    let mut x = [p.y0, p.v0];
    let mut u = Vec::with_capacity(total - skip);
    let mut y = Vec::with_capacity(total - skip);
    for s in 0..total {
        // Sample times are computed from the index so no drift accumulates.
        let t0 = (s as f64 - skip as f64) * ts;
        if s >= skip {
            u.push(a * libm::cos(t0));
            y.push(x[0]);
        }
        for j in 0..substeps {
            x = rk4_step(f, t0 + j as f64 * h, x, h);
        }
        if !(x[0].is_finite() && x[1].is_finite()) {
            return Err(Error::Divergence { step: s });
        }
    }
    add_uniform_noise(&mut y, p.noise, p.noise_seed)?;
    Dataset::new("duffing-ueda", ts, u, y)
}
