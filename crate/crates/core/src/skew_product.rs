//! The affine Dunkl process as a skew product `Y_t = w_{η_t} · X_t`.
//!
//! A radial path `X` and its clock `η` are simulated first. Unit exponential
//! variates `e_1, e_2, …` give the levels `τ_n = e_1 + … + e_n`, and the jump
//! times are `T_n = inf{t : η_t > τ_n}`. At `T_n` a reflection `s_p` is drawn
//! from `σ^{Y_{T_n−}}` and the group element is updated `w ← s_p ∘ w`.

use std::f64::consts::PI;

use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::alcove::AlcovePoint;
use crate::error::{Error, Result};
use crate::multiplicity::Multiplicity;
use crate::radial::{invert_eta, simulate_radial, EtaInverse, PathSample, StepPolicy};
use crate::rng::PathSeed;
use crate::weyl::{jump_weights, AffineMap, ReflectionSampler};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpEvent {
    pub time: f64,
    /// `p` of the reflection `s_p`.
    pub reflection: i64,
    pub y_pre: AlcovePoint,
    pub y_post: AlcovePoint,
    pub w_after: AffineMap,
    /// Clock level `τ_n` that triggered the jump.
    pub tau: f64,
}

impl JumpEvent {
    /// `y_post − y_pre`, with the integer parts subtracted exactly.
    pub fn displacement(&self) -> f64 {
        (self.y_post.alcove - self.y_pre.alcove) as f64 + (self.y_post.offset - self.y_pre.offset)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DunklTrajectory {
    pub radial: PathSample,
    /// Every exponential variate drawn, including the last one, whose level
    /// lies beyond `η` at the horizon.
    pub clocks: Vec<f64>,
    pub jumps: Vec<JumpEvent>,
    pub k: f64,
}

/// Simulates the affine Dunkl process from `x0` on `[0, t_end]`.
pub fn simulate_affine_dunkl(
    x0: f64,
    k: Multiplicity,
    t_end: f64,
    seed: PathSeed,
    policy: &StepPolicy,
) -> Result<DunklTrajectory> {
    let radial = simulate_radial(x0, k, t_end, seed, policy)?;
    attach_jumps(radial, seed)
}

/// Draws the clocks and reflections for an existing radial path.
pub fn attach_jumps(radial: PathSample, seed: PathSeed) -> Result<DunklTrajectory> {
    let mut rng = seed.jump_rng();
    let mut clocks = Vec::new();
    let mut jumps = Vec::new();
    let mut w = AffineMap::IDENTITY;
    let mut tau = 0.0;
    loop {
        let e: f64 = Exp1.sample(&mut rng);
        clocks.push(e);
        tau += e;
        let time = match invert_eta(&radial, tau)? {
            EtaInverse::Saturated => break,
            EtaInverse::Time(time) => time,
        };
        let y_pre = w.apply_point(radial.point_at(time)?)?;
        let p = ReflectionSampler::new(y_pre).sample(&mut rng);
        let s = AffineMap::reflection(p);
        w = s.compose(w)?;
        jumps.push(JumpEvent {
            time,
            reflection: p,
            y_pre,
            y_post: s.apply_point(y_pre)?,
            w_after: w,
            tau,
        });
    }
    let k = radial.k;
    Ok(DunklTrajectory { radial, clocks, jumps, k })
}

impl DunklTrajectory {
    pub fn t_end(&self) -> f64 {
        self.radial.t_end()
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if t >= 0.0 && t <= self.t_end() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "time {t} outside the simulated horizon [0, {}]",
                self.t_end()
            )))
        }
    }

    /// Number of jumps in `[0, t]`.
    pub fn jump_count(&self, t: f64) -> Result<usize> {
        self.check_time(t)?;
        Ok(self.jumps.partition_point(|j| j.time <= t))
    }

    /// Group element in force at `t` (right-continuous).
    pub fn map_at(&self, t: f64) -> Result<AffineMap> {
        let n = self.jump_count(t)?;
        Ok(if n == 0 { AffineMap::IDENTITY } else { self.jumps[n - 1].w_after })
    }

    /// `Y_t = w_{η_t} · X_t`.
    pub fn query(&self, t: f64) -> Result<AlcovePoint> {
        let w = self.map_at(t)?;
        w.apply_point(self.radial.point_at(t)?)
    }

    pub fn value_at(&self, t: f64) -> Result<f64> {
        Ok(self.query(t)?.value())
    }

    pub fn eta_at(&self, t: f64) -> Result<f64> {
        self.radial.eta_at(t)
    }

    /// `Σ_{T_n ≤ t} (Y_{T_n} − Y_{T_n−})`.
    pub fn jump_sum(&self, t: f64) -> Result<f64> {
        let n = self.jump_count(t)?;
        Ok(self.jumps[..n].iter().map(JumpEvent::displacement).sum())
    }

    /// `∫₀ᵗ kπ cot(πY_s) ds` by the trapezoidal rule on the radial grid,
    /// with grid steps split at the jump times.
    ///
    /// `cot(π(εx + 2m)) = ε cot(πx)`, so only the sign of `w` matters.
    pub fn drift_integral(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        let path = &self.radial;
        let g = |u: f64| self.k * PI / (PI * u).tan();
        let mut total = 0.0;
        let mut sign = 1.0;
        let mut next_jump = 0;
        for i in 0..path.len().saturating_sub(1) {
            let (t0, t1) = (path.times[i], path.times[i + 1]);
            if t0 >= t {
                break;
            }
            let end = t1.min(t);
            let mut a = t0;
            let mut ga = g(path.offsets[i]);
            loop {
                let split = self.jumps.get(next_jump).map(|j| j.time).filter(|&s| s < end);
                let b = split.unwrap_or(end);
                let gb = g(path.offset_at(b)?);
                total += sign * 0.5 * (ga + gb) * (b - a);
                match split {
                    Some(_) => {
                        sign = self.jumps[next_jump].w_after.epsilon as f64;
                        next_jump += 1;
                        a = b;
                        ga = gb;
                    }
                    None => break,
                }
            }
        }
        Ok(total)
    }

    /// Values on the uniform grid `0, dt, 2dt, …` (the horizon included).
    pub fn sample_grid(&self, dt: f64) -> Result<Vec<(f64, f64)>> {
        if !(dt > 0.0) {
            return Err(Error::domain(format!("grid step must be positive, got {dt}")));
        }
        let t_end = self.t_end();
        let steps = (t_end / dt).round() as u64;
        let mut out = Vec::with_capacity(steps as usize + 2);
        let mut i = 0u64;
        loop {
            let t = i as f64 * dt;
            if t >= t_end - 1e-12 * dt {
                break;
            }
            out.push((t, self.value_at(t)?));
            i += 1;
        }
        out.push((t_end, self.value_at(t_end)?));
        Ok(out)
    }
}

/// Jump times from the recursion `T_n = inf{t > T_{n−1} : η_t − η_{T_{n−1}} > e_n}`,
/// accumulating the clock increment by increment instead of inverting `η`.
pub fn jump_times_recursive(path: &PathSample, clocks: &[f64]) -> Vec<f64> {
    let mut times = Vec::new();
    let mut i = 0;
    // η at the last jump time, measured from the start of grid step i
    let mut start_eta = 0.0f64;
    'clocks: for &e in clocks {
        let mut acc = 0.0;
        while i + 1 < path.len() {
            let inc = path.eta[i + 1] - start_eta.max(path.eta[i]);
            if acc + inc > e {
                let base = start_eta.max(path.eta[i]);
                let target = base + (e - acc);
                let (e0, e1) = (path.eta[i], path.eta[i + 1]);
                let (t0, t1) = (path.times[i], path.times[i + 1]);
                times.push(t0 + (target - e0) / (e1 - e0) * (t1 - t0));
                start_eta = target;
                continue 'clocks;
            }
            acc += inc;
            i += 1;
        }
        break;
    }
    times
}

/// Jump intensities `(k/2) / (x − p)²` of the Lévy kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevyKernel {
    pub center: f64,
    pub rates: Vec<(i64, f64)>,
    /// Total intensity of the integers not listed.
    pub tail_rate: f64,
}

impl LevyKernel {
    pub fn listed_rate(&self) -> f64 {
        self.rates.iter().rev().map(|&(_, r)| r).sum()
    }
}

/// `kπ² / (2 sin²(πx))`, the total jump intensity and the rate of `η`.
pub fn total_jump_rate(x: f64, k: Multiplicity) -> Result<f64> {
    let p = AlcovePoint::from_value(x)?;
    let s = (PI * p.offset).sin();
    Ok(0.5 * k.get() * PI * PI / (s * s))
}

pub fn levy_kernel_weights(x: f64, k: Multiplicity, tail_tol: f64) -> Result<LevyKernel> {
    let sigma = jump_weights(x, tail_tol)?;
    let total = total_jump_rate(x, k)?;
    let kv = k.get();
    let rates = sigma
        .weights
        .iter()
        .map(|&(p, _)| {
            let d = x - p as f64;
            (p, 0.5 * kv / (d * d))
        })
        .collect();
    Ok(LevyKernel { center: x, rates, tail_rate: total * sigma.tail_mass })
}

/// A twice differentiable test function for the generator.
pub trait TestFunction {
    fn value(&self, x: f64) -> f64;

    /// `(f′(x), f″(x))` when known in closed form.
    fn derivatives(&self, _x: f64) -> Option<(f64, f64)> {
        None
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Identity;

impl TestFunction for Identity {
    fn value(&self, x: f64) -> f64 {
        x
    }
    fn derivatives(&self, _x: f64) -> Option<(f64, f64)> {
        Some((1.0, 0.0))
    }
}

/// `cos(2πx)`, invariant under the affine Weyl group.
#[derive(Debug, Clone, Copy)]
pub struct CosTwoPi;

impl TestFunction for CosTwoPi {
    fn value(&self, x: f64) -> f64 {
        (2.0 * PI * x).cos()
    }
    fn derivatives(&self, x: f64) -> Option<(f64, f64)> {
        let w = 2.0 * PI;
        Some((-w * (w * x).sin(), -w * w * (w * x).cos()))
    }
}

/// `exp(−1 / (1 − s²))` with `s = (x − center)/radius`, zero for `|s| ≥ 1`.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    pub center: f64,
    pub radius: f64,
}

impl TestFunction for Bump {
    fn value(&self, x: f64) -> f64 {
        let s = (x - self.center) / self.radius;
        if s.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - s * s)).exp()
        }
    }
    fn derivatives(&self, x: f64) -> Option<(f64, f64)> {
        let s = (x - self.center) / self.radius;
        if s.abs() >= 1.0 {
            return Some((0.0, 0.0));
        }
        let q = 1.0 - s * s;
        let g = (-1.0 / q).exp();
        let phi1 = -2.0 * s / (q * q);
        let phi2 = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
        let r = self.radius;
        Some((g * phi1 / r, g * (phi1 * phi1 + phi2) / (r * r)))
    }
}

/// Wraps a closure; derivatives by central differences.
pub struct FnTest<F>(pub F);

impl<F: Fn(f64) -> f64> TestFunction for FnTest<F> {
    fn value(&self, x: f64) -> f64 {
        (self.0)(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorValue {
    pub value: f64,
    /// Bound on the truncation error of the jump sum before extrapolation.
    pub tail_bound: f64,
}

const DIFF_STEP: f64 = 1e-5;

/// `𝒜f(x) = ½f″ + kπ cot(πx) f′ + (k/2) Σ_p [f(2p − x) − f(x)] / (x − p)²`.
///
/// The jump series is not absolutely convergent for unbounded `f`, so it is
/// summed over `p = 0` and the pairs `(n, −n)`, `n ≤ N` with `N = trunc_pairs`,
/// small terms first. The `O(1/N)` remainder of the pair sums is removed by
/// Richardson extrapolation `2S(N) − S(N/2)`, and `|S(N) − S(N/2)|` is
/// reported as the size of the un-extrapolated truncation error.
pub fn generator_apply<F: TestFunction + ?Sized>(
    f: &F,
    x: f64,
    k: Multiplicity,
    trunc_pairs: usize,
) -> Result<GeneratorValue> {
    AlcovePoint::from_value(x)?;
    if trunc_pairs < 2 {
        return Err(Error::domain("generator_apply needs at least two reflection pairs"));
    }
    let kv = k.get();
    let fx = f.value(x);
    let (d1, d2) = match f.derivatives(x) {
        Some(d) => d,
        None => {
            let h = DIFF_STEP;
            let (up, down) = (f.value(x + h), f.value(x - h));
            ((up - down) / (2.0 * h), (up - 2.0 * fx + down) / (h * h))
        }
    };
    let term = |p: i64| {
        let d = x - p as f64;
        (f.value(2.0 * p as f64 - x) - fx) / (d * d)
    };
    let pair = |n: usize| term(n as i64) + term(-(n as i64));
    let half = trunc_pairs / 2;
    let outer: f64 = (half + 1..=trunc_pairs).rev().map(pair).sum();
    let inner: f64 = (1..=half).rev().map(pair).sum::<f64>() + term(0);
    let s_half = inner;
    let s_full = inner + outer;
    let jumps = 0.5 * kv * (2.0 * s_full - s_half);
    let drift = kv * PI / (PI * x).tan();
    Ok(GeneratorValue {
        value: 0.5 * d2 + drift * d1 + jumps,
        tail_bound: 0.5 * kv * (s_full - s_half).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: f64) -> Multiplicity {
        Multiplicity::new(v).unwrap()
    }

    #[test]
    fn trajectories_are_reproducible_and_consistent() {
        let pol = StepPolicy::default();
        for i in 0..10 {
            let seed = PathSeed::new(21, i);
            let a = simulate_affine_dunkl(0.5, k(1.0), 1.0, seed, &pol).unwrap();
            let b = simulate_affine_dunkl(0.5, k(1.0), 1.0, seed, &pol).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.clocks.len(), a.jumps.len() + 1);
            for j in &a.jumps {
                let expected = -j.y_pre.value() + 2.0 * j.reflection as f64;
                assert!((j.y_post.value() - expected).abs() < 1e-12 * (1.0 + expected.abs()));
                assert!((a.eta_at(j.time).unwrap() - j.tau).abs() < 1e-9 * (1.0 + j.tau));
            }
            assert!(a.jumps.windows(2).all(|w| w[1].time > w[0].time));
            assert_eq!(a.jump_count(0.0).unwrap(), 0);
            assert_eq!(a.jump_count(1.0).unwrap(), a.jumps.len());
            assert!(a.jump_count(1.5).is_err());
        }
    }

    #[test]
    fn projection_recovers_the_radial_path() {
        let traj = simulate_affine_dunkl(0.3, k(1.0), 1.0, PathSeed::new(4, 2), &StepPolicy::default()).unwrap();
        for (i, &t) in traj.radial.times.iter().enumerate() {
            let y = traj.query(t).unwrap();
            let x = traj.radial.offsets[i];
            assert!((y.principal() - x).abs() <= 1e-12, "t = {t}");
        }
    }

    #[test]
    fn no_jumps_means_the_radial_path() {
        // tiny horizon: η stays far below a typical clock
        let traj = simulate_affine_dunkl(0.5, k(1.0), 1e-6, PathSeed::new(1, 0), &StepPolicy::default()).unwrap();
        if traj.jumps.is_empty() {
            assert_eq!(traj.value_at(1e-6).unwrap(), traj.radial.final_point().value());
            assert_eq!(traj.map_at(1e-6).unwrap(), AffineMap::IDENTITY);
        }
    }

    #[test]
    fn recursion_agrees_with_inversion() {
        let traj = simulate_affine_dunkl(0.4, k(0.75), 1.0, PathSeed::new(8, 1), &StepPolicy::default()).unwrap();
        let rec = jump_times_recursive(&traj.radial, &traj.clocks);
        assert_eq!(rec.len(), traj.jumps.len());
        for (r, j) in rec.iter().zip(&traj.jumps) {
            assert!((r - j.time).abs() < 1e-9);
        }
    }

    #[test]
    fn levy_kernel_examples() {
        let kern = levy_kernel_weights(0.5, k(1.0), 1e-6).unwrap();
        let rate = |p| kern.rates.iter().find(|r| r.0 == p).unwrap().1;
        assert!((rate(0) - 2.0).abs() < 1e-14);
        assert!((rate(1) - 2.0).abs() < 1e-14);
        for &x in &[0.5, 0.13, 2.71] {
            let kern = levy_kernel_weights(x, k(1.5), 1e-6).unwrap();
            let total = total_jump_rate(x, k(1.5)).unwrap();
            assert!(((kern.listed_rate() + kern.tail_rate) - total).abs() < 1e-12 * total);
            let sigma = jump_weights(x, 1e-6).unwrap();
            for (&(p, r), &(q, w)) in kern.rates.iter().zip(&sigma.weights) {
                assert_eq!(p, q);
                assert!((r - total * w).abs() < 1e-13 * r);
            }
        }
        let k1 = levy_kernel_weights(0.3, k(1.0), 1e-6).unwrap();
        let k2 = levy_kernel_weights(0.3, k(2.0), 1e-6).unwrap();
        assert!((k2.rates[3].1 - 2.0 * k1.rates[3].1).abs() < 1e-15);
    }

    #[test]
    fn generator_examples() {
        for &x in &[0.3, 0.5, 0.77, -1.4] {
            let g = generator_apply(&Identity, x, k(1.0), 100_000).unwrap();
            assert!(g.value.abs() < 1e-8, "x = {x}: {}", g.value);
            let c = generator_apply(&FnTest(|_| 3.0), x, k(2.0), 1000).unwrap();
            assert_eq!(c.value, 0.0);
        }
        let g = generator_apply(&CosTwoPi, 0.25, k(1.0), 1000).unwrap();
        assert!((g.value + 2.0 * PI * PI).abs() < 1e-10, "{}", g.value);
        assert!(generator_apply(&Identity, 1.0, k(1.0), 10).is_err());
    }

    #[test]
    fn generator_of_cosine_is_spectral() {
        // cos 2πx = 2cos²πx − 1 is a combination of G_2 and G_0 in cos πx
        for &kv in &[0.5, 1.0, 2.5] {
            for &x in &[0.1, 0.25, 0.6] {
                let g = generator_apply(&CosTwoPi, x, k(kv), 1000).unwrap();
                let lambda2 = 2.0 * PI * PI * (1.0 + kv);
                let expected = -lambda2 * ((2.0 * PI * x).cos() + kv / (kv + 1.0));
                assert!((g.value - expected).abs() < 1e-9, "k={kv} x={x}");
            }
        }
    }

    #[test]
    fn bump_derivatives_match_differences() {
        let b = Bump { center: 0.4, radius: 0.3 };
        for &x in &[0.2, 0.35, 0.5, 0.65] {
            let (d1, d2) = b.derivatives(x).unwrap();
            let h = 1e-4;
            let fd1 = (b.value(x + h) - b.value(x - h)) / (2.0 * h);
            let fd2 = (b.value(x + h) - 2.0 * b.value(x) + b.value(x - h)) / (h * h);
            assert!((d1 - fd1).abs() < 1e-5 * (1.0 + d1.abs()), "{d1} {fd1}");
            assert!((d2 - fd2).abs() < 1e-4 * (1.0 + d2.abs()), "{d2} {fd2}");
        }
        assert_eq!(b.value(0.75), 0.0);
    }

    #[test]
    fn drift_integral_matches_direct_sum_without_jumps() {
        let path = PathSample::from_grid(
            0,
            vec![0.0, 0.5, 1.0],
            vec![0.25, 0.5, 0.25],
            k(1.0),
            PathSeed::new(0, 0),
        )
        .unwrap();
        let traj = DunklTrajectory { radial: path, clocks: vec![], jumps: vec![], k: 1.0 };
        // trapezoid: ½·0.5·(π + 0) + ½·0.5·(0 + π)
        assert!((traj.drift_integral(1.0).unwrap() - 0.5 * PI).abs() < 1e-12);
        assert!((traj.drift_integral(0.5).unwrap() - 0.25 * PI).abs() < 1e-12);
    }
}
