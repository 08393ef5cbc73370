//! The radial process: `dX = dB + kπ cot(πX) dt` on one alcove.
//!
//! Paths are produced by Euler–Maruyama on the equivalent equation for
//! `z = ln tan(πu/2)`, where `u` is the offset inside the alcove:
//!
//! ```text
//! dz = π cosh(z) dB − (k − ½) π² sinh(z) cosh(z) dt.
//! ```
//!
//! The walls sit at `z = ±∞`, so a step can never leave the alcove, and
//! `d(u) = (2/π) atan(e^{−|z|})` keeps full precision near both walls.
//!
//! Steps are taken in the clock `τ` with `dτ = π² cosh²(z) dt = π² dt / sin²(πu)`,
//! where the equation reads `dz = dW_τ − (k − ½) tanh(z) dτ` and the additive
//! functional is exactly `η = (kπ²/2) ∫ dt / sin²(πu) = (k/2) τ`. The τ-step
//! is chosen so that its left-point real duration is `h = min(h_max, c·d²)`;
//! the real duration actually recorded is the trapezoidal rule for
//! `∫ dτ / (π² cosh² z)`. The left-point rule alone would bias the time
//! spent near the walls at first order (at `k = ½`, where `z` is an exact
//! Brownian motion in `τ`, that is the only error of the scheme).
//!
//! Once `|z|` exceeds [`DEEP_LEVEL`] the drift `(k − ½)` toward the centre is
//! constant to double precision, and the excursion back to that level is
//! sampled exactly: its `τ`-length is an inverse Gaussian (a Lévy variable
//! when `k = ½`) and the real time it takes is below `τ / (π² cosh² z)`.
//! The excursion collapses into one grid step whose `η` increment is
//! `(k/2)·τ`. Without this, `k = ½` paths spend an unbounded number of steps
//! in excursions of negligible duration.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, InverseGaussian, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::alcove::AlcovePoint;
use crate::error::{Error, Result};
use crate::multiplicity::Multiplicity;
use crate::quadrature::gauss_kronrod;
use crate::rng::PathSeed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepPolicy {
    pub h_max: f64,
    /// Step factor in `h = c·d²`.
    pub c: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            h_max: 1e-3,
            c: 0.1,
        }
    }
}

impl StepPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.h_max > 0.0 && self.h_max.is_finite()) {
            return Err(Error::domain(format!("h_max must be positive, got {}", self.h_max)));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::domain(format!("step factor c must be positive, got {}", self.c)));
        }
        Ok(())
    }

    /// Step at offset `u ∈ (0, 1)`.
    #[inline]
    pub fn step(&self, u: f64) -> f64 {
        self.step_at_distance(u.min(1.0 - u))
    }

    #[inline]
    fn step_at_distance(&self, d: f64) -> f64 {
        self.h_max.min(self.c * d * d)
    }
}

/// `kπ cot(πx)`.
pub fn drift(x: f64, k: Multiplicity) -> Result<f64> {
    let p = AlcovePoint::from_value(x)?;
    Ok(drift_at_offset(p.offset, k.get()))
}

#[inline]
fn drift_at_offset(u: f64, k: f64) -> f64 {
    k * PI / (PI * u).tan()
}

/// `(kπ²/2) / sin²(πu)`, the rate of `η`.
#[inline]
pub(crate) fn eta_rate(u: f64, k: f64) -> f64 {
    let s = (PI * u).sin();
    0.5 * k * PI * PI / (s * s)
}

fn check_open_unit(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{x} is not in the open interval (0, 1)")))
    }
}

/// Scale function `p(x) = (1/π) ∫_{π/2}^{πx} (sin θ)^{−2k} dθ` on `(0, 1)`.
pub fn scale_function(x: f64, k: Multiplicity) -> Result<f64> {
    check_open_unit(x)?;
    if x == 0.5 {
        return Ok(0.0);
    }
    if x > 0.5 {
        return Ok(-scale_function(1.0 - x, k)?);
    }
    let kv = k.get();
    if kv == 0.5 {
        return Ok((0.5 * PI * x).tan().ln() / PI);
    }
    if kv == 1.0 {
        return Ok(-1.0 / ((PI * x).tan() * PI));
    }
    let q = gauss_kronrod(|th: f64| th.sin().powf(-2.0 * kv), PI * x, 0.5 * PI, 1e-13);
    Ok(-q.value / PI)
}

/// `p′(x) = (sin πx)^{−2k}`.
pub fn scale_derivative(x: f64, k: Multiplicity) -> Result<f64> {
    check_open_unit(x)?;
    Ok((PI * x).sin().powf(-2.0 * k.get()))
}

/// Speed measure density `2 / p′(x) = 2 (sin πx)^{2k}`.
pub fn speed_density(x: f64, k: Multiplicity) -> Result<f64> {
    check_open_unit(x)?;
    Ok(2.0 * (PI * x).sin().powf(2.0 * k.get()))
}

/// A radial path on a single alcove.
///
/// Positions are stored as offsets inside the alcove, so the distance to
/// the walls keeps full relative precision whatever the alcove index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub alcove: i64,
    pub times: Vec<f64>,
    pub offsets: Vec<f64>,
    /// `η` at each grid time, `eta[0] = 0`.
    pub eta: Vec<f64>,
    pub k: f64,
    pub seed: PathSeed,
}

/// Result of `invert_eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EtaInverse {
    Time(f64),
    /// `η` never exceeds the level on the simulated horizon.
    Saturated,
}

impl PathSample {
    /// Builds a path from given grid values, with `η` by the trapezoidal rule.
    pub fn from_grid(
        alcove: i64,
        times: Vec<f64>,
        offsets: Vec<f64>,
        k: Multiplicity,
        seed: PathSeed,
    ) -> Result<Self> {
        if times.is_empty() || times.len() != offsets.len() {
            return Err(Error::domain("times and offsets must be nonempty and of equal length"));
        }
        if times[0] != 0.0 || times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("times must start at 0 and increase strictly"));
        }
        for &u in &offsets {
            check_open_unit(u)?;
        }
        let kv = k.get();
        let mut eta = Vec::with_capacity(times.len());
        eta.push(0.0);
        for i in 1..times.len() {
            let dt = times[i] - times[i - 1];
            let inc = 0.5 * (eta_rate(offsets[i - 1], kv) + eta_rate(offsets[i], kv)) * dt;
            eta.push(eta[i - 1] + inc);
        }
        Ok(PathSample { alcove, times, offsets, eta, k: kv, seed })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().expect("paths are nonempty")
    }

    pub fn point(&self, i: usize) -> AlcovePoint {
        AlcovePoint { alcove: self.alcove, offset: self.offsets[i] }
    }

    pub fn values(&self) -> impl Iterator<Item = AlcovePoint> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    pub fn final_point(&self) -> AlcovePoint {
        self.point(self.len() - 1)
    }

    pub fn eta_end(&self) -> f64 {
        *self.eta.last().expect("paths are nonempty")
    }

    /// Smallest distance of the path to the alcove walls.
    pub fn min_wall_distance(&self) -> f64 {
        self.offsets.iter().fold(f64::INFINITY, |m, &u| m.min(u.min(1.0 - u)))
    }

    fn locate(&self, t: f64) -> Result<usize> {
        if !(t >= 0.0 && t <= self.t_end()) {
            return Err(Error::domain(format!(
                "time {t} outside the simulated horizon [0, {}]",
                self.t_end()
            )));
        }
        // index i with times[i] ≤ t < times[i + 1], clamped to the last interval
        let i = self.times.partition_point(|&s| s <= t);
        Ok(i.saturating_sub(1).min(self.len().saturating_sub(2)))
    }

    /// Offset at time `t` by linear interpolation of the grid.
    pub fn offset_at(&self, t: f64) -> Result<f64> {
        let i = self.locate(t)?;
        if self.len() == 1 {
            return Ok(self.offsets[0]);
        }
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let w = (t - t0) / (t1 - t0);
        let u = self.offsets[i] + w * (self.offsets[i + 1] - self.offsets[i]);
        // both end points are inside the alcove, so is the chord
        Ok(u)
    }

    pub fn point_at(&self, t: f64) -> Result<AlcovePoint> {
        Ok(AlcovePoint { alcove: self.alcove, offset: self.offset_at(t)? })
    }

    /// `η_t` by linear interpolation of the grid values.
    pub fn eta_at(&self, t: f64) -> Result<f64> {
        let i = self.locate(t)?;
        if self.len() == 1 {
            return Ok(0.0);
        }
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let w = (t - t0) / (t1 - t0);
        Ok(self.eta[i] + w * (self.eta[i + 1] - self.eta[i]))
    }
}

/// `a(level) = inf{s : η_s > level}` on the linearly interpolated `η`.
pub fn invert_eta(path: &PathSample, level: f64) -> Result<EtaInverse> {
    if !(level >= 0.0) {
        return Err(Error::domain(format!("level must be nonnegative, got {level}")));
    }
    let i = path.eta.partition_point(|&e| e <= level);
    if i == path.eta.len() {
        return Ok(EtaInverse::Saturated);
    }
    // eta[i − 1] ≤ level < eta[i]
    let (e0, e1) = (path.eta[i - 1], path.eta[i]);
    let (t0, t1) = (path.times[i - 1], path.times[i]);
    Ok(EtaInverse::Time(t0 + (level - e0) / (e1 - e0) * (t1 - t0)))
}

/// `dt/dτ = sin²(πu)/π² = 1/(π² cosh² z)`.
#[inline]
fn time_rate(z: f64) -> f64 {
    let c = z.cosh();
    1.0 / (PI * PI * c * c)
}

/// `|z|` beyond which excursions are sampled exactly (distance ≈ 1e−8).
pub const DEEP_LEVEL: f64 = 18.0;

#[inline]
fn z_of_offset(u: f64) -> f64 {
    // tan(πu/2) loses relative precision near u = 1; use the mirror there
    if u <= 0.5 {
        (0.5 * PI * u).tan().ln()
    } else {
        -(0.5 * PI * (1.0 - u)).tan().ln()
    }
}

/// Distance to the nearer wall.
#[inline]
fn distance_of_z(z: f64) -> f64 {
    2.0 / PI * (-z.abs()).exp().atan()
}

/// Offset in the open interval, pinned one ulp inside if rounding lands on a wall.
#[inline]
fn offset_of_z(z: f64) -> f64 {
    let d = distance_of_z(z);
    let u = if z <= 0.0 { d } else { 1.0 - d };
    u.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
}

/// Time sum that keeps increments far below the resolution of `t`.
#[derive(Default)]
struct Clock {
    hi: f64,
    lo: f64,
}

impl Clock {
    fn add(&mut self, h: f64) {
        // Neumaier two-sum
        let s = self.hi + h;
        let err = if self.hi.abs() >= h.abs() { (self.hi - s) + h } else { (h - s) + self.hi };
        self.hi = s;
        self.lo += err;
        let t = self.hi + self.lo;
        self.lo -= t - self.hi;
        self.hi = t;
    }

    fn remaining(&self, t_end: f64) -> f64 {
        (t_end - self.hi) - self.lo
    }
}

/// Simulates `X` on `[0, t_end]` from `x0`, on the alcove containing `x0`.
///
/// `t_end = 0` gives the single-point path.
pub fn simulate_radial(
    x0: f64,
    k: Multiplicity,
    t_end: f64,
    seed: PathSeed,
    policy: &StepPolicy,
) -> Result<PathSample> {
    policy.validate()?;
    let start = AlcovePoint::from_value(x0)?;
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::domain(format!("t_end must be nonnegative, got {t_end}")));
    }
    let kv = k.get();
    let mu = kv - 0.5;
    let mut rng = seed.diffusion_rng();

    let mut times = vec![0.0];
    let mut offsets = vec![start.offset];
    let mut eta = vec![0.0];
    let mut clock = Clock::default();
    let mut z = z_of_offset(start.offset);
    let mut eta_acc = 0.0;

    loop {
        let remaining = clock.remaining(t_end);
        if remaining <= 0.0 {
            break;
        }
        let d = distance_of_z(z);
        let step = policy.step_at_distance(d);
        let last = remaining <= step;
        let g0 = time_rate(z);
        // τ-step whose left-point real duration is the policy step
        let rho = if last { remaining } else { step } / g0;
        let noise: f64 = rng.sample(StandardNormal);
        let mut z_new = z + rho.sqrt() * noise - mu * z.tanh() * rho;
        let mut d_eta = 0.5 * kv * rho;
        let mut dt = if last { remaining } else { 0.5 * rho * (g0 + time_rate(z_new)) };

        if z_new.abs() > DEEP_LEVEL && !last {
            // exact first passage back to the deep level, drift μ toward it
            let gap = z_new.abs() - DEEP_LEVEL;
            let tau = first_passage(gap, mu, &mut rng);
            d_eta += 0.5 * kv * tau;
            dt += tau * time_rate(DEEP_LEVEL);
            z_new = DEEP_LEVEL.copysign(z_new);
        }
        if !z_new.is_finite() {
            return Err(Error::NonFinite { t: clock.hi });
        }

        z = z_new;
        eta_acc += d_eta;
        if last {
            clock = Clock { hi: t_end, lo: 0.0 };
        } else {
            clock.add(dt);
            if clock.remaining(t_end) <= 0.0 {
                // the trapezoidal duration, or an excursion, ran past the
                // horizon by less than one step: end the path here
                clock = Clock { hi: t_end, lo: 0.0 };
            }
        }
        let u = offset_of_z(z);
        if clock.hi > *times.last().expect("nonempty") {
            times.push(clock.hi);
            offsets.push(u);
            eta.push(eta_acc);
        } else {
            // step shorter than the resolution of t: merge into the last point
            let i = times.len() - 1;
            if i == 0 {
                // keep the initial point; the merged step starts the next one
                times.push(f64::from_bits(clock.hi.to_bits() + 1).max(clock.hi));
                offsets.push(u);
                eta.push(eta_acc);
                clock.hi = times[i + 1];
                clock.lo = 0.0;
            } else {
                offsets[i] = u;
                eta[i] = eta_acc;
            }
        }
    }

    Ok(PathSample {
        alcove: start.alcove,
        times,
        offsets,
        eta,
        k: kv,
        seed,
    })
}

/// `τ`-time for Brownian motion with drift `μ ≥ 0` to climb a distance `gap`.
fn first_passage<R: Rng + ?Sized>(gap: f64, mu: f64, rng: &mut R) -> f64 {
    if mu * gap < 1e-8 {
        // driftless limit: Lévy distribution gap² / N²
        let n: f64 = rng.sample(StandardNormal);
        return gap * gap / (n * n).max(f64::MIN_POSITIVE);
    }
    let ig = InverseGaussian::new(gap / mu, gap * gap).expect("positive parameters");
    ig.sample(rng)
}
