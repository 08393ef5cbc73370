//! Statistical and identity checks, each producing a [`ValidationReport`].
//!
//! Monte Carlo checks draw path `i` from `PathSeed::new(seed, i)` and keep
//! results in path order, so a report is a function of its parameters and
//! seed alone. Moment checks use `3·SE` bands, where `SE = s/√n` with `s` the
//! sample standard deviation; distribution checks run at level 0.01. The
//! threshold and the formula behind the statistic are written into each
//! report's `method` field.
//!
//! With the seven default suites and roughly fifteen independent
//! comparisons at level ≤ 0.01, the chance that a correct implementation
//! fails somewhere is below 15% per fresh seed; the fixed default seed makes
//! the outcome deterministic.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::FromPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcove::AlcovePoint;
use crate::error::{Error, Result};
use crate::multiplicity::Multiplicity;
use crate::quadrature::tanh_sinh;
use crate::radial::{simulate_radial, StepPolicy};
use crate::rng::PathSeed;
use crate::skew_product::{generator_apply, simulate_affine_dunkl, CosTwoPi, Identity};
use crate::special_fn::{
    alternating_sum_identity, gamma, gegenbauer_explicit, gegenbauer_norm, gegenbauer_sequence,
    gegenbauer_weight_integral, GegenbauerTerms,
};
use crate::spectral::{eigenvalue, expected_inverse_sin2_with_bound, SpectralTruncation, TransitionKernel};
use crate::stats::{
    chi_square_quantile, chi_square_sf, chi_square_statistic, kolmogorov_sf, ks_scaled,
    ks_statistic, merge_small, CdfTable, MeanSe, KS_CRITICAL_01,
};
use crate::weyl::{jump_weights, tail_masses, weight_at, AffineMap, ReflectionSampler, WINDOW};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Moment checks pass within this many standard errors.
pub const SE_BAND: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Not enough data to decide, e.g. no jumps were observed.
    Inconclusive,
    /// The quantity under test does not exist for these parameters.
    Refused,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub k_list: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub t: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub name: String,
    /// Version of the library that produced the report.
    pub version: String,
    pub parameters: Parameters,
    pub statistic: f64,
    pub threshold: f64,
    pub standard_error: Option<f64>,
    pub p_value: Option<f64>,
    pub verdict: Verdict,
    /// What the statistic is and when it passes.
    pub method: String,
    pub notes: Vec<String>,
}

impl ValidationReport {
    /// A report whose verdict is `statistic ≤ threshold`.
    fn judged(
        name: &str,
        parameters: Parameters,
        statistic: f64,
        threshold: f64,
        method: impl Into<String>,
    ) -> Self {
        let verdict = if statistic <= threshold { Verdict::Pass } else { Verdict::Fail };
        ValidationReport {
            name: name.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters,
            statistic,
            threshold,
            standard_error: None,
            p_value: None,
            verdict,
            method: method.into(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Refused because the tested quantity does not exist, which is the
    /// expected outcome at those parameters.
    pub fn is_refusal(&self) -> bool {
        self.verdict == Verdict::Refused
    }
}

/// Path count, master seed and step policy of a Monte Carlo check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub paths: u64,
    pub seed: u64,
    pub policy: StepPolicy,
}

impl MonteCarlo {
    pub fn new(paths: u64, seed: u64) -> Self {
        MonteCarlo { paths, seed, policy: StepPolicy::default() }
    }

    fn parameters(&self) -> Parameters {
        Parameters { paths: Some(self.paths), seed: Some(self.seed), ..Parameters::default() }
    }
}

/// Runs `f` on paths `0..n` in parallel and returns the results in path order.
pub fn run_paths<T, F>(n: u64, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(PathSeed) -> Result<T> + Sync,
{
    (0..n).into_par_iter().map(|i| f(PathSeed::new(seed, i))).collect()
}

/// Decorrelated seed for the `tag`-th check of a suite (SplitMix64 finalizer).
pub fn sub_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed.wrapping_add(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn require_paths(mc: &MonteCarlo) -> Result<()> {
    if mc.paths == 0 {
        Err(Error::EmptySample)
    } else {
        mc.policy.validate()
    }
}

/// Kolmogorov–Smirnov test of simulated `X_t` against the spectral density.
pub fn density_gof(k: f64, x0: f64, t: f64, mc: &MonteCarlo) -> Result<ValidationReport> {
    let km = Multiplicity::new(k)?;
    require_paths(mc)?;
    let start = AlcovePoint::from_value(x0)?;
    let kernel = TransitionKernel::new(t, x0, km, &SpectralTruncation::default())?;
    let cells = 4096;
    let table = CdfTable::new(
        |u| kernel.relative_density(u) * (PI * u).sin().powf(2.0 * k),
        cells,
    )?;
    let sample = run_paths(mc.paths, mc.seed, |seed| {
        let path = simulate_radial(x0, km, t, seed, &mc.policy)?;
        Ok(path.final_point().offset)
    })?;
    let d = ks_statistic(&sample, |u| table.cdf(u))?;
    let scaled = ks_scaled(d, sample.len());
    let mut report = ValidationReport::judged(
        "density_gof",
        Parameters { k: Some(k), x0: Some(x0), t: vec![t], ..mc.parameters() },
        scaled,
        KS_CRITICAL_01,
        format!(
            "Kolmogorov-Smirnov: statistic D(sqrt(n) + 0.12 + 0.11/sqrt(n)) of the simulated \
             alcove offsets against the spectral CDF (Gauss-Legendre on {cells} cells, \
             renormalized to mass 1); pass iff below the 0.01 critical value {KS_CRITICAL_01}"
        ),
    );
    report.p_value = Some(kolmogorov_sf(scaled));
    report.notes.push(format!("D = {d:e}"));
    report.notes.push(format!("alcove ({}, {})", start.alcove, start.alcove + 1));
    report.notes.push(format!(
        "spectral CDF: {} terms, mass before renormalization {:.15}",
        kernel.terms(),
        table.raw_mass()
    ));
    Ok(report)
}

/// `Y_t − x0` computed from the alcove parts without cancellation.
fn displacement(y: AlcovePoint, x0: AlcovePoint) -> f64 {
    (y.alcove - x0.alcove) as f64 + (y.offset - x0.offset)
}

/// `|mean(Y_t) − x0| ≤ 3·SE` at every `t` of the grid.
pub fn martingale_test(k: f64, x0: f64, t_grid: &[f64], mc: &MonteCarlo) -> Result<ValidationReport> {
    let km = Multiplicity::new(k)?;
    require_paths(mc)?;
    let start = AlcovePoint::from_value(x0)?;
    if t_grid.is_empty() {
        return Err(Error::domain("the time grid of the martingale test is empty"));
    }
    if let Some(&t) = t_grid.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
        return Err(Error::domain(format!("grid times must be nonnegative, got {t}")));
    }
    let t_max = t_grid.iter().copied().fold(0.0, f64::max);
    let rows = run_paths(mc.paths, mc.seed, |seed| {
        if t_max == 0.0 {
            return Ok(vec![0.0; t_grid.len()]);
        }
        let traj = simulate_affine_dunkl(x0, km, t_max, seed, &mc.policy)?;
        t_grid.iter().map(|&t| Ok(displacement(traj.query(t)?, start))).collect()
    })?;

    let mut worst = 0.0f64;
    let mut worst_se = 0.0;
    let mut notes = Vec::new();
    for (j, &t) in t_grid.iter().enumerate() {
        let column: Vec<f64> = rows.iter().map(|r| r[j]).collect();
        let m = MeanSe::of(&column)?;
        let z = m.z_score(0.0);
        notes.push(format!("t = {t}: mean(Y_t) - x0 = {:e}, SE = {:e}, z = {z:.3}", m.mean, m.se));
        if z >= worst {
            worst = z;
            worst_se = m.se;
        }
    }
    let mut report = ValidationReport::judged(
        "martingale",
        Parameters { k: Some(k), x0: Some(x0), t: t_grid.to_vec(), ..mc.parameters() },
        worst,
        SE_BAND,
        "largest z = |mean(Y_t) - x0| / SE over the grid, SE = s/sqrt(n); pass iff <= 3",
    );
    report.standard_error = Some(worst_se);
    report.notes = notes;
    Ok(report)
}

/// Refusal at `k = ½`, where `E[η_t]` is infinite.
fn refusal(name: &str, parameters: Parameters, k: f64) -> ValidationReport {
    ValidationReport {
        name: name.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        parameters,
        statistic: f64::INFINITY,
        threshold: SE_BAND,
        standard_error: None,
        p_value: None,
        verdict: Verdict::Refused,
        method: "not run".into(),
        notes: vec![Error::InfiniteExpectation { k }.to_string()],
    }
}

/// Mean jump count `V_t`, mean clock `η_t` and `(kπ²/2) E[∫ ds/sin²]` agree.
pub fn compensator_test(k: f64, x0: f64, t: f64, mc: &MonteCarlo) -> Result<ValidationReport> {
    let km = Multiplicity::new(k)?;
    let parameters = Parameters { k: Some(k), x0: Some(x0), t: vec![t], ..mc.parameters() };
    if km.is_critical() {
        return Ok(refusal("compensator", parameters, k));
    }
    require_paths(mc)?;
    AlcovePoint::from_value(x0)?;
    let series = expected_inverse_sin2_with_bound(t, x0, km, &SpectralTruncation::default())?;
    let scale = 0.5 * k * PI * PI;
    let target = scale * series.value;
    let target_err = scale * series.error_bound;

    let rows = run_paths(mc.paths, mc.seed, |seed| {
        let traj = simulate_affine_dunkl(x0, km, t, seed, &mc.policy)?;
        Ok((traj.jump_count(t)? as f64, traj.radial.eta_end()))
    })?;
    let v: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let eta: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let diff: Vec<f64> = rows.iter().map(|r| r.0 - r.1).collect();
    let (mv, me, md) = (MeanSe::of(&v)?, MeanSe::of(&eta)?, MeanSe::of(&diff)?);

    // the series error bound widens the band of the two legs that use it:
    // z ≤ 3 iff |mean − target| ≤ 3·SE + error bound
    let z_ve = md.z_score(0.0);
    let z_et = (me.mean - target).abs() / (me.se + target_err / SE_BAND);
    let z_vt = (mv.mean - target).abs() / (mv.se + target_err / SE_BAND);
    let worst = z_ve.max(z_et).max(z_vt);

    let mut report = ValidationReport::judged(
        "compensator",
        parameters,
        worst,
        SE_BAND,
        "largest of three z-scores: |mean(V_t - eta_t)| / SE (paired), \
         |mean(eta_t) - target| / SE(eta_t), |mean(V_t) - target| / SE(V_t), \
         target = (k pi^2 / 2) E[int_0^t ds / sin^2(pi X_s)] from the spectral series; \
         pass iff <= 3",
    );
    report.standard_error = Some((mv.se * mv.se + me.se * me.se).sqrt());
    report.notes = vec![
        format!("mean V_t = {} (SE {:e})", mv.mean, mv.se),
        format!("mean eta_t = {} (SE {:e})", me.mean, me.se),
        format!("target = {target} (series error bound {target_err:e}, {} terms)", series.terms),
        format!("z(V - eta) = {z_ve:.3}, z(eta - target) = {z_et:.3}, z(V - target) = {z_vt:.3}"),
    ];
    Ok(report)
}

/// Reflection categories `j = p − alcove` counted individually.
const JUMP_CATEGORIES: std::ops::RangeInclusive<i64> = -2..=3;
const JUMP_BINS: usize = 5;
/// Smallest number of jumps in a position bin before it is merged.
const MIN_BIN_COUNT: usize = 50;
/// Smallest merged expectation of a chi-square cell.
const MIN_EXPECTED: f64 = 5.0;

/// Category probabilities at one pre-jump offset: the listed `j`, then the rest.
fn category_probabilities(offset: f64) -> Vec<f64> {
    let mut probs: Vec<f64> = JUMP_CATEGORIES.map(|j| weight_at(offset, j)).collect();
    let listed: f64 = probs.iter().sum();
    probs.push((1.0 - listed).max(0.0));
    probs
}

fn category_of(j: i64) -> usize {
    if JUMP_CATEGORIES.contains(&j) {
        (j - JUMP_CATEGORIES.start()) as usize
    } else {
        JUMP_CATEGORIES.count()
    }
}

/// Pooled chi-square over position bins; returns `(statistic, df, notes)`.
fn pooled_chi_square(draws: &[(f64, i64)]) -> Result<(f64, usize, Vec<String>)> {
    let cats = JUMP_CATEGORIES.count() + 1;
    let mut bins: Vec<(usize, Vec<f64>, Vec<f64>)> =
        (0..JUMP_BINS).map(|_| (0, vec![0.0; cats], vec![0.0; cats])).collect();
    for &(offset, j) in draws {
        let b = ((offset * JUMP_BINS as f64) as usize).min(JUMP_BINS - 1);
        let bin = &mut bins[b];
        bin.0 += 1;
        bin.1[category_of(j)] += 1.0;
        for (e, p) in bin.2.iter_mut().zip(category_probabilities(offset)) {
            *e += p;
        }
    }
    // merge sparse position bins into their right neighbour (the last one leftward)
    let mut notes = Vec::new();
    let mut merged: Vec<(usize, Vec<f64>, Vec<f64>)> = Vec::new();
    let mut pending: Option<(usize, Vec<f64>, Vec<f64>)> = None;
    for (i, bin) in bins.into_iter().enumerate() {
        let acc = match pending.take() {
            None => bin,
            Some(mut p) => {
                notes.push(format!("position bin {i} merged with its left neighbour"));
                p.0 += bin.0;
                p.1.iter_mut().zip(&bin.1).for_each(|(a, b)| *a += b);
                p.2.iter_mut().zip(&bin.2).for_each(|(a, b)| *a += b);
                p
            }
        };
        if acc.0 >= MIN_BIN_COUNT {
            merged.push(acc);
        } else {
            pending = Some(acc);
        }
    }
    if let Some(rest) = pending {
        match merged.last_mut() {
            Some(last) => {
                notes.push("last position bin merged with its left neighbour".into());
                last.0 += rest.0;
                last.1.iter_mut().zip(&rest.1).for_each(|(a, b)| *a += b);
                last.2.iter_mut().zip(&rest.2).for_each(|(a, b)| *a += b);
            }
            None => merged.push(rest),
        }
    }
    let (mut stat, mut df) = (0.0, 0);
    for (count, obs, exp) in &merged {
        // sort categories by expectation so merging pools the rare ones
        let mut order: Vec<usize> = (0..obs.len()).collect();
        order.sort_by(|&a, &b| exp[b].total_cmp(&exp[a]));
        let o: Vec<f64> = order.iter().map(|&i| obs[i]).collect();
        let e: Vec<f64> = order.iter().map(|&i| exp[i]).collect();
        let (o, e) = merge_small(&o, &e, MIN_EXPECTED);
        if o.len() >= 2 {
            stat += chi_square_statistic(&o, &e);
            df += o.len() - 1;
        }
        notes.push(format!("{count} jumps in a bin, {} cells after merging", o.len()));
    }
    Ok((stat, df, notes))
}

/// Chi-square report with the 0.99 quantile as threshold.
fn chi_square_report(
    name: &str,
    parameters: Parameters,
    stat: f64,
    df: usize,
    method: &str,
) -> Result<ValidationReport> {
    if df == 0 {
        let mut r = ValidationReport::judged(name, parameters, stat, f64::INFINITY, method);
        r.verdict = Verdict::Inconclusive;
        r.notes.push("no degrees of freedom left after merging".into());
        return Ok(r);
    }
    let threshold = chi_square_quantile(0.99, df)?;
    let mut r = ValidationReport::judged(name, parameters, stat, threshold, method);
    r.p_value = Some(chi_square_sf(stat, df)?);
    r.notes.push(format!("df = {df}"));
    Ok(r)
}

/// Chi-square test of the reflection drawn at the first jump of each
/// trajectory against `σ^{Y_{T−}}`, pooled over bins of the pre-jump offset.
pub fn jump_law_test(k: f64, x0: f64, t: f64, mc: &MonteCarlo) -> Result<ValidationReport> {
    let km = Multiplicity::new(k)?;
    require_paths(mc)?;
    AlcovePoint::from_value(x0)?;
    let firsts = run_paths(mc.paths, mc.seed, |seed| {
        let traj = simulate_affine_dunkl(x0, km, t, seed, &mc.policy)?;
        Ok(traj.jumps.first().map(|j| (j.y_pre.offset, j.reflection - j.y_pre.alcove)))
    })?;
    let draws: Vec<(f64, i64)> = firsts.into_iter().flatten().collect();
    let parameters = Parameters { k: Some(k), x0: Some(x0), t: vec![t], ..mc.parameters() };
    let method = "Pearson chi-square of j = p - alcove(Y_T-) at the first jump, categories \
                  j = -2..3 and the rest, expected counts summed from sigma at each pre-jump \
                  offset, pooled over 5 offset bins (bins with < 50 jumps merged, cells \
                  merged up to expectation >= 5); pass iff below the 0.99 quantile";
    if draws.is_empty() {
        let mut r = ValidationReport::judged("jump_law", parameters, 0.0, f64::INFINITY, method);
        r.verdict = Verdict::Inconclusive;
        r.notes.push("no jumps observed on the horizon".into());
        return Ok(r);
    }
    let (stat, df, notes) = pooled_chi_square(&draws)?;
    let mut r = chi_square_report("jump_law", parameters, stat, df, method)?;
    r.notes.insert(0, format!("{} of {} trajectories jumped", draws.len(), mc.paths));
    r.notes.extend(notes);
    Ok(r)
}

/// Explicit categories `j ∈ [−J + 1, J]` of the frozen sampler test.
const FROZEN_SPAN: i64 = 8;

/// Chi-square test of [`ReflectionSampler`] at a fixed point: the integers
/// near `x` one by one, the rest of the window per side, and each tail
/// beyond the window.
pub fn sampler_test(x: f64, draws: u64, seed: u64) -> Result<ValidationReport> {
    let point = AlcovePoint::from_value(x)?;
    if draws == 0 {
        return Err(Error::EmptySample);
    }
    let v = point.offset;
    let sampler = ReflectionSampler::new(point);
    let mut rng = PathSeed::new(seed, 0).jump_rng();
    let explicit = (2 * FROZEN_SPAN) as usize;
    // explicit j, window left, window right, tail left, tail right
    let mut counts = vec![0.0; explicit + 4];
    for _ in 0..draws {
        let j = sampler.sample(&mut rng) - point.alcove;
        let cell = if j > -FROZEN_SPAN && j <= FROZEN_SPAN {
            (j + FROZEN_SPAN - 1) as usize
        } else if j > -WINDOW && j < 0 {
            explicit
        } else if j > 0 && j <= WINDOW {
            explicit + 1
        } else if j <= -WINDOW {
            explicit + 2
        } else {
            explicit + 3
        };
        counts[cell] += 1.0;
    }
    let mut probs: Vec<f64> = (-FROZEN_SPAN + 1..=FROZEN_SPAN).map(|j| weight_at(v, j)).collect();
    probs.push((-WINDOW + 1..=-FROZEN_SPAN).map(|j| weight_at(v, j)).sum());
    probs.push((FROZEN_SPAN + 1..=WINDOW).map(|j| weight_at(v, j)).sum());
    let (l, r) = tail_masses(v, WINDOW, WINDOW);
    probs.push(l);
    probs.push(r);
    let n = draws as f64;
    let expected: Vec<f64> = probs.iter().map(|p| p * n).collect();
    let (o, e) = merge_small(&counts, &expected, MIN_EXPECTED);
    let stat = chi_square_statistic(&o, &e);
    let mut report = chi_square_report(
        "reflection_sampler",
        Parameters { x0: Some(x), paths: Some(draws), seed: Some(seed), ..Parameters::default() },
        stat,
        o.len().saturating_sub(1),
        "Pearson chi-square of sampled reflections at a fixed point: j = p - alcove in \
         -7..8 one by one, the rest of the 64-wide window per side, and each tail beyond it \
         (masses from trigamma); pass iff below the 0.99 quantile",
    )?;
    report.notes.push(format!("probability mass of the cells: {:.15}", probs.iter().sum::<f64>()));
    Ok(report)
}

/// Binomial test of `P(p = alcove)` at a fixed point (`4/π²` at the centre).
pub fn sampler_binomial_test(x: f64, draws: u64, seed: u64) -> Result<ValidationReport> {
    let point = AlcovePoint::from_value(x)?;
    if draws == 0 {
        return Err(Error::EmptySample);
    }
    let sampler = ReflectionSampler::new(point);
    let mut rng = PathSeed::new(seed, 0).jump_rng();
    let hits = (0..draws).filter(|_| sampler.sample(&mut rng) == point.alcove).count() as f64;
    let n = draws as f64;
    let p = weight_at(point.offset, 0);
    let se = (p * (1.0 - p) / n).sqrt();
    let z = (hits / n - p).abs() / se;
    // two-sided 0.01 point of the standard normal
    let critical = 2.575_829_303_548_901;
    let mut report = ValidationReport::judged(
        "reflection_binomial",
        Parameters { x0: Some(x), paths: Some(draws), seed: Some(seed), ..Parameters::default() },
        z,
        critical,
        "z = |hits/n - p| / sqrt(p(1 - p)/n) for the reflection through the left wall, \
         p = sin^2(pi x)/(pi x)^2 in alcove coordinates; pass iff below 2.5758 (two-sided 0.01)",
    );
    report.standard_error = Some(se);
    report.p_value = Some(normal_two_sided(z));
    report.notes.push(format!("observed {} vs p = {p}", hits / n));
    Ok(report)
}

fn normal_two_sided(z: f64) -> f64 {
    use statrs::distribution::{ContinuousCDF, Normal};
    let n = Normal::new(0.0, 1.0).expect("standard normal");
    2.0 * n.sf(z)
}

/// `𝒜(id)(x) = 0` under symmetric-pair truncation.
pub fn generator_identity_check(k: f64, points: &[f64], pairs: usize) -> Result<ValidationReport> {
    let km = Multiplicity::new(k)?;
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for &x in points {
        let g = generator_apply(&Identity, x, km, pairs)?;
        notes.push(format!("x = {x}: A(id) = {:e}, tail bound {:e}", g.value, g.tail_bound));
        worst = worst.max(g.value.abs());
    }
    let mut r = ValidationReport::judged(
        "generator_identity",
        Parameters { k: Some(k), ..Parameters::default() },
        worst,
        1e-8,
        format!("max |A(id)(x)| with {pairs} symmetric pairs and Richardson extrapolation; pass iff <= 1e-8"),
    );
    r.notes = notes;
    Ok(r)
}

/// `(E f(Y_h) − f(x)) / h → 𝒜f(x)` for `f = cos(2π·)`.
///
/// `cos 2π·` is `W`-invariant and `𝒜f = −λ₂ (f + k/(k+1))`, so
/// `E f(Y_h) − f(x) = (f(x) + k/(k+1))(e^{−λ₂h} − 1)` and the difference
/// quotient misses `𝒜f(x)` by at most `(h/2) λ₂² |f(x) + k/(k+1)|`. Each `h`
/// passes if its estimate lies within `3·SE` plus that bound of the target,
/// and the error must not grow from one `h` to the next beyond
/// `3·sqrt(SE₁² + SE₂²)`. The step is capped at `h/20` so the time grid
/// resolves every horizon.
pub fn generator_limit_test(k: f64, x: f64, hs: &[f64], mc: &MonteCarlo) -> Result<ValidationReport> {
    let km = Multiplicity::new(k)?;
    require_paths(mc)?;
    AlcovePoint::from_value(x)?;
    if hs.is_empty() || hs.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
        return Err(Error::domain("horizons must be a nonempty list of positive numbers"));
    }
    let target = generator_apply(&CosTwoPi, x, km, 1000)?.value;
    let lambda = eigenvalue(2, km);
    let fx = (2.0 * PI * x).cos();
    let curvature = lambda * lambda * (fx + k / (k + 1.0)).abs();

    let mut rows = Vec::new();
    for (i, &h) in hs.iter().enumerate() {
        let policy = StepPolicy { h_max: mc.policy.h_max.min(h / 20.0), ..mc.policy };
        let offset = i as u64 * mc.paths;
        let values = run_paths(mc.paths, mc.seed, |seed| {
            let seed = PathSeed::new(seed.master, seed.path + offset);
            let traj = simulate_affine_dunkl(x, km, h, seed, &policy)?;
            // cos 2π y depends on the alcove offset only
            Ok(((2.0 * PI * traj.query(h)?.offset).cos() - fx) / h)
        })?;
        let m = MeanSe::of(&values)?;
        let band = SE_BAND * m.se + 0.5 * h * curvature;
        rows.push((h, m, band));
    }
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for (h, m, band) in &rows {
        let err = (m.mean - target).abs();
        notes.push(format!(
            "h = {h}: estimate {} (SE {:e}), |error| {err:e}, band {band:e}",
            m.mean, m.se
        ));
        worst = worst.max(err / band);
    }
    for w in rows.windows(2) {
        let (e0, e1) = ((w[0].1.mean - target).abs(), (w[1].1.mean - target).abs());
        let slack = SE_BAND * (w[0].1.se.powi(2) + w[1].1.se.powi(2)).sqrt();
        let ratio = if e1 <= e0 { 0.0 } else { (e1 - e0) / slack };
        notes.push(format!("h = {} -> {}: error change {:e}", w[0].0, w[1].0, e1 - e0));
        worst = worst.max(ratio);
    }
    let mut r = ValidationReport::judged(
        "generator_limit",
        Parameters { k: Some(k), x0: Some(x), t: hs.to_vec(), ..mc.parameters() },
        worst,
        1.0,
        "f = cos(2 pi x): for each h, |(mean f(Y_h) - f(x))/h - Af(x)| / (3 SE + (h/2) lambda_2^2 \
         |f(x) + k/(k+1)|), and for consecutive h the error increase over 3 sqrt(SE1^2 + SE2^2); \
         pass iff the largest ratio <= 1",
    );
    r.notes = notes;
    r.notes.insert(0, format!("target Af(x) = {target}"));
    Ok(r)
}

/// Counts paths whose offset ever reaches a wall of the alcove.
pub fn confinement_test(k: f64, x0: f64, t_end: f64, mc: &MonteCarlo) -> Result<ValidationReport> {
    let km = Multiplicity::new(k)?;
    require_paths(mc)?;
    AlcovePoint::from_value(x0)?;
    let mins = run_paths(mc.paths, mc.seed, |seed| {
        let path = simulate_radial(x0, km, t_end, seed, &mc.policy)?;
        Ok(path.min_wall_distance())
    })?;
    let contacts = mins.iter().filter(|d| !(**d > 0.0)).count();
    let closest = mins.iter().copied().fold(f64::INFINITY, f64::min);
    let mut r = ValidationReport::judged(
        "confinement",
        Parameters { k: Some(k), x0: Some(x0), t: vec![t_end], ..mc.parameters() },
        contacts as f64,
        0.0,
        "number of paths with a grid offset outside the open alcove; pass iff 0",
    );
    r.notes.push(format!("smallest distance to a wall: {closest:e}"));
    Ok(r)
}

/// Outcome of one deterministic identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        // NaN errors fail
        let max_error = if max_error.is_nan() { f64::INFINITY } else { max_error };
        IdentityCheck { name: name.into(), max_error, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

const QUAD_TOL: f64 = 1e-13;

/// `∫₀^{π/2} [F(θ) + F(π − θ)] dθ` with the two halves evaluated separately,
/// so integrands singular at `0` and `π` only meet tanh-sinh at the origin.
fn integrate_over_half_turn<F: Fn(f64, f64) -> f64>(f: F) -> f64 {
    // f(cos θ, sin θ)
    let near = tanh_sinh(|th| f(th.cos(), th.sin()), 0.0, 0.5 * PI, QUAD_TOL).value;
    let far = tanh_sinh(|th| f(-th.cos(), th.sin()), 0.0, 0.5 * PI, QUAD_TOL).value;
    near + far
}

/// `∫ G_n G_m (1 − x²)^{k−½} dx = π δ_{nm} / ω_n` for `n, m ≤ n_max`; errors
/// relative to `π / sqrt(ω_n ω_m)`.
pub fn orthogonality_check(k: f64, n_max: usize) -> Result<IdentityCheck> {
    let norms: Vec<f64> =
        (0..=n_max).map(|n| gegenbauer_norm(n, k).map(|w| PI / w)).collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        for m in n..=n_max {
            let value = integrate_over_half_turn(|c, s| {
                let g = gegenbauer_sequence(m, k, c).expect("k checked");
                g[n] * g[m] * s.powf(2.0 * k)
            });
            let exact = if n == m { norms[n] } else { 0.0 };
            worst = worst.max((value - exact).abs() / (norms[n] * norms[m]).sqrt());
        }
    }
    Ok(IdentityCheck::new(format!("gegenbauer orthogonality, k = {k}, n <= {n_max}"), worst, 1e-8))
}

/// `∫ G_n (1 − x²)^{k − 3/2} dx` against its closed form, `k > ½`.
pub fn weight_integral_check(k: f64, n_max: usize) -> Result<IdentityCheck> {
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let exact = gegenbauer_weight_integral(n, k)?;
        let value = integrate_over_half_turn(|c, s| {
            GegenbauerTerms::new(k, c).expect("k checked").nth(n).unwrap_or(0.0) * s.powf(2.0 * k - 2.0)
        });
        worst = worst.max((value - exact).abs());
    }
    Ok(IdentityCheck::new(format!("weight integral, k = {k}, n <= {n_max}"), worst, 1e-8))
}

/// `Σ_j (−1)^{n−j} C(n, j) (k + j)_n = n!` in exact arithmetic; the error is
/// the number of `n` that fail.
pub fn alternating_sum_check(k: &BigRational, n_max: u32) -> IdentityCheck {
    let mut failures = 0;
    let mut factorial = BigRational::from_integer(1.into());
    for n in 0..=n_max {
        if n > 0 {
            factorial *= BigRational::from_integer(n.into());
        }
        if alternating_sum_identity(n, k) != factorial {
            failures += 1;
        }
    }
    IdentityCheck::new(
        format!("alternating sum = n!, k = {k}, n <= {n_max}"),
        failures as f64,
        0.0,
    )
}

/// Recurrence against the explicit sum, relative to `G_n(1)`.
pub fn recurrence_check(k: f64, n_max: usize) -> Result<IdentityCheck> {
    let mut worst = 0.0f64;
    for i in 0..=20 {
        let y = -1.0 + 0.1 * i as f64;
        let rec = gegenbauer_sequence(n_max, k, y)?;
        let mut at_one = 1.0;
        for (n, r) in rec.iter().enumerate() {
            let exact = gegenbauer_explicit(n, k, y)?;
            worst = worst.max((r - exact).abs() / at_one);
            at_one *= (n as f64 + 2.0 * k) / (n as f64 + 1.0);
        }
    }
    Ok(IdentityCheck::new(format!("recurrence vs explicit sum, k = {k}, n <= {n_max}"), worst, 1e-10))
}

/// `G_n^{(1)}(cos θ) sin θ = sin((n + 1)θ)`.
pub fn chebyshev_check(n_max: usize) -> Result<IdentityCheck> {
    let mut worst = 0.0f64;
    for i in 1..64 {
        let th = PI * i as f64 / 64.0;
        let g = gegenbauer_sequence(n_max, 1.0, th.cos())?;
        for (n, v) in g.iter().enumerate() {
            let exact = ((n + 1) as f64 * th).sin();
            worst = worst.max((v * th.sin() - exact).abs() / (n + 1) as f64);
        }
    }
    Ok(IdentityCheck::new(format!("k = 1 Chebyshev form, n <= {n_max}"), worst, 1e-12))
}

/// `Γ(z) Γ(z + ½) = 2^{1−2z} √π Γ(2z)`, relative error.
pub fn duplication_check() -> Result<IdentityCheck> {
    let mut worst = 0.0f64;
    for i in 1..=80 {
        let z = 0.125 * i as f64;
        let lhs = gamma(z)? * gamma(z + 0.5)?;
        let rhs = 2f64.powf(1.0 - 2.0 * z) * PI.sqrt() * gamma(2.0 * z)?;
        worst = worst.max((lhs / rhs - 1.0).abs());
    }
    Ok(IdentityCheck::new("gamma duplication formula", worst, 1e-12))
}

/// `sin²(π w·x) = sin²(πx)` for `w` with `|m| ≤ 50`, through floating-point
/// application; and the alcove offset is preserved exactly (up to the
/// mirror `1 − u`) by exact application.
pub fn weyl_invariance_check() -> Result<IdentityCheck> {
    let mut worst = 0.0f64;
    for m in -50..=50 {
        for eps in [-1i8, 1] {
            let w = AffineMap::new(eps, m)?;
            for i in 1..20 {
                let x = 0.05 * i as f64 - 0.013;
                let s0 = (PI * x).sin().powi(2);
                worst = worst.max(((PI * w.apply(x)).sin().powi(2) - s0).abs());
                let p = AlcovePoint::from_value(x)?;
                let image = w.apply_point(p)?;
                let u = if eps == 1 { p.offset } else { 1.0 - p.offset };
                worst = worst.max((image.offset - u).abs());
            }
        }
    }
    Ok(IdentityCheck::new("W-invariance of sin^2(pi x)", worst, 1e-12))
}

/// `Σ_p σˣ(s_p) = 1`: listed weights plus the trigamma tail.
pub fn jump_mass_check() -> Result<IdentityCheck> {
    let mut worst = 0.0f64;
    for &x in &[0.01, 0.1, 0.37, 0.5, 0.9, 1.62, -3.25, 1e-6] {
        let d = jump_weights(x, 1e-6)?;
        worst = worst.max((d.partial_mass() + d.tail_mass - 1.0).abs());
    }
    Ok(IdentityCheck::new("total mass of sigma^x", worst, 1e-12))
}

/// Heat kernel of `½ d²/dx²` on `(0, 1)` killed at the ends, by images.
fn dirichlet_kernel(t: f64, x: f64, y: f64) -> f64 {
    let phi = |z: f64| (-z * z / (2.0 * t)).exp() / (2.0 * PI * t).sqrt();
    (-8..=8)
        .map(|n| {
            let shift = 2.0 * n as f64;
            phi(y - x + shift) - phi(y + x + shift)
        })
        .sum()
}

/// At `k = 1`, `q_t(x, y) = e^{π²t/2} (sin πy / sin πx) p^D_t(x, y)`.
pub fn legendre_cross_check(t: f64, grid: usize) -> Result<IdentityCheck> {
    let k = Multiplicity::new(1.0)?;
    let trunc = SpectralTruncation::default();
    let mut worst = 0.0f64;
    for i in 0..grid {
        let x = (i as f64 + 0.5) / grid as f64;
        let kernel = TransitionKernel::new(t, x, k, &trunc)?;
        for j in 0..grid {
            let y = (j as f64 + 0.5) / grid as f64;
            let exact = (0.5 * PI * PI * t).exp() * (PI * y).sin() / (PI * x).sin()
                * dirichlet_kernel(t, x, y);
            worst = worst.max((kernel.density(y)? - exact).abs());
        }
    }
    Ok(IdentityCheck::new(
        format!("k = 1 density vs Dirichlet heat kernel, t = {t}, {grid}x{grid} grid"),
        worst,
        1e-8,
    ))
}

fn identity_report(name: &str, parameters: Parameters, checks: &[IdentityCheck]) -> ValidationReport {
    let ratio = |c: &IdentityCheck| {
        if c.max_error == 0.0 {
            0.0
        } else if c.tolerance == 0.0 {
            f64::INFINITY
        } else {
            c.max_error / c.tolerance
        }
    };
    let worst = checks.iter().map(ratio).fold(0.0, f64::max);
    let mut r = ValidationReport::judged(
        name,
        parameters,
        worst,
        1.0,
        "largest ratio max_error / tolerance over the listed checks; pass iff <= 1",
    );
    r.notes = checks
        .iter()
        .map(|c| {
            let mark = if c.passed() { "ok" } else { "FAILED" };
            format!("{mark}: {}: max error {:e} (tolerance {:e})", c.name, c.max_error, c.tolerance)
        })
        .collect();
    r
}

/// Exact and quadrature identities for each `k` in the list, plus the
/// `k`-independent ones (Chebyshev form, Dirichlet cross-check, Gamma
/// duplication, `W`-invariance, jump mass).
pub fn identity_suite(k_list: &[f64]) -> Result<ValidationReport> {
    let parameters = Parameters { k_list: k_list.to_vec(), ..Parameters::default() };
    if k_list.is_empty() {
        let mut r = identity_report("identities", parameters, &[]);
        r.notes.push("warning: empty k list, nothing was checked".into());
        return Ok(r);
    }
    let mut checks = Vec::new();
    for &k in k_list {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::domain(format!("identity checks need k > 0, got {k}")));
        }
        checks.push(orthogonality_check(k, 20)?);
        if k > 0.5 {
            checks.push(weight_integral_check(k, 16)?);
        }
        checks.push(recurrence_check(k, 12)?);
        let exact = BigRational::from_f64(k).expect("finite");
        checks.push(alternating_sum_check(&exact, 12));
    }
    checks.push(chebyshev_check(40)?);
    checks.push(legendre_cross_check(0.2, 32)?);
    checks.push(duplication_check()?);
    checks.push(weyl_invariance_check()?);
    checks.push(jump_mass_check()?);
    Ok(identity_report("identities", parameters, &checks))
}

/// Normalization, positivity, detailed balance and Chapman–Kolmogorov for
/// the spectral density at each `k`.
pub fn density_checks(k: f64) -> Result<Vec<IdentityCheck>> {
    let km = Multiplicity::new(k)?;
    let trunc = SpectralTruncation::default();
    let mut checks = Vec::new();

    let mut worst_mass = 0.0f64;
    let mut negative = 0usize;
    for &t in &[0.05, 0.25, 1.0] {
        for &x in &[0.1, 0.3, 0.5, 0.71] {
            let kernel = TransitionKernel::new(t, x, km, &trunc)?;
            let mass = tanh_sinh(|u| kernel.density_at_offset(u).unwrap_or(f64::NAN), 0.0, 1.0, 1e-12);
            worst_mass = worst_mass.max((mass.value - 1.0).abs());
            for i in 1..200 {
                if !(kernel.density_at_offset(i as f64 / 200.0)? >= 0.0) {
                    negative += 1;
                }
            }
        }
    }
    checks.push(IdentityCheck::new(format!("normalization, k = {k}"), worst_mass, 1e-6));
    checks.push(IdentityCheck::new(format!("negative values, k = {k}"), negative as f64, 0.0));

    let grid: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0 - 0.02).collect();
    let mut worst_balance = 0.0f64;
    for &t in &[0.05, 0.5] {
        let kernels: Vec<TransitionKernel> =
            grid.iter().map(|&x| TransitionKernel::new(t, x, km, &trunc)).collect::<Result<_>>()?;
        for (i, &x) in grid.iter().enumerate() {
            for (j, &y) in grid.iter().enumerate() {
                let lhs = (PI * x).sin().powf(2.0 * k) * kernels[i].density(y)?;
                let rhs = (PI * y).sin().powf(2.0 * k) * kernels[j].density(x)?;
                worst_balance = worst_balance.max((lhs - rhs).abs());
            }
        }
    }
    checks.push(IdentityCheck::new(format!("detailed balance, k = {k}"), worst_balance, 1e-9));

    let (s, t) = (0.25, 0.25);
    let mut worst_ck = 0.0f64;
    for &x in &[0.2, 0.5, 0.73] {
        let first = TransitionKernel::new(s, x, km, &trunc)?;
        let direct = TransitionKernel::new(s + t, x, km, &trunc)?;
        for &y in &[0.1, 0.37, 0.5, 0.9] {
            let composed = tanh_sinh(
                |z| {
                    let q1 = first.density_at_offset(z).unwrap_or(f64::NAN);
                    let q2 = TransitionKernel::new(t, z, km, &trunc)
                        .and_then(|kz| kz.density_at_offset(y))
                        .unwrap_or(f64::NAN);
                    q1 * q2
                },
                0.0,
                1.0,
                1e-12,
            );
            worst_ck = worst_ck.max((composed.value - direct.density(y)?).abs());
        }
    }
    checks.push(IdentityCheck::new(
        format!("Chapman-Kolmogorov s = t = 0.25, k = {k}"),
        worst_ck,
        1e-6,
    ));
    Ok(checks)
}

pub fn density_sanity(k_list: &[f64]) -> Result<ValidationReport> {
    let parameters = Parameters { k_list: k_list.to_vec(), ..Parameters::default() };
    let mut checks = Vec::new();
    for &k in k_list {
        checks.extend(density_checks(k)?);
    }
    let mut r = identity_report("density_sanity", parameters, &checks);
    if k_list.is_empty() {
        r.notes.push("warning: empty k list, nothing was checked".into());
    }
    Ok(r)
}

/// Groups of reports run by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Density,
    Martingale,
    Compensator,
    Jumps,
    Generator,
    Confinement,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Identities,
        Suite::Density,
        Suite::Martingale,
        Suite::Compensator,
        Suite::Jumps,
        Suite::Generator,
        Suite::Confinement,
    ];
}

/// Master seed and an optional path count overriding every default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub paths: Option<u64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: DEFAULT_SEED, paths: None }
    }
}

pub const DEFAULT_K_LIST: [f64; 4] = [0.5, 0.75, 1.0, 2.0];

/// Runs a suite at its default parameters.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<ValidationReport>> {
    let mc = |tag: u64, default: u64| MonteCarlo::new(opts.paths.unwrap_or(default), sub_seed(opts.seed, tag));
    match suite {
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run_suite(s, opts)?);
            }
            Ok(all)
        }
        Suite::Identities => Ok(vec![identity_suite(&DEFAULT_K_LIST)?]),
        Suite::Density => Ok(vec![
            density_sanity(&DEFAULT_K_LIST)?,
            density_gof(1.0, 0.5, 0.5, &mc(1, 100_000))?,
            density_gof(0.5, 0.3, 0.5, &mc(2, 100_000))?,
        ]),
        Suite::Martingale => Ok(vec![
            martingale_test(1.0, 0.5, &[0.1, 0.25, 0.5], &mc(3, 20_000))?,
            martingale_test(2.0, 1.5, &[0.1, 0.25, 0.5], &mc(4, 20_000))?,
        ]),
        Suite::Compensator => Ok(vec![
            compensator_test(1.0, 0.5, 1.0, &mc(5, 10_000))?,
            compensator_test(0.75, 0.3, 0.5, &mc(6, 10_000))?,
            compensator_test(0.5, 0.5, 1.0, &mc(7, 10_000))?,
        ]),
        Suite::Jumps => {
            let draws = opts.paths.map_or(1_000_000, |p| p.max(1) * 100);
            Ok(vec![
                sampler_binomial_test(0.5, draws, sub_seed(opts.seed, 8))?,
                sampler_test(0.37, draws, sub_seed(opts.seed, 9))?,
                jump_law_test(1.0, 0.5, 1.0, &mc(10, 10_000))?,
            ])
        }
        Suite::Generator => Ok(vec![
            generator_identity_check(1.0, &[0.1, 0.25, 0.5, 0.77, 2.3], 100_000)?,
            generator_limit_test(1.0, 0.25, &[0.02, 0.01, 0.005], &mc(11, 100_000))?,
        ]),
        Suite::Confinement => [0.5, 1.0, 2.0]
            .iter()
            .enumerate()
            .map(|(i, &k)| confinement_test(k, 0.5, 1.0, &mc(12 + i as u64, 10_000)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn identity_suite_passes_and_empty_is_vacuous() {
        let r = identity_suite(&[1.0]).unwrap();
        assert!(r.passed(), "{:#?}", r.notes);
        let empty = identity_suite(&[]).unwrap();
        assert!(empty.passed());
        assert!(empty.notes[0].contains("warning"));
    }

    #[test]
    fn alternating_sum_rejects_a_wrong_value() {
        let k = BigRational::from_f64(0.75).unwrap();
        assert!(alternating_sum_check(&k, 12).passed());
        assert_eq!(k.to_f64(), Some(0.75));
    }

    #[test]
    fn refusal_and_empty_sample() {
        let mc = MonteCarlo::new(10, 1);
        let r = compensator_test(0.5, 0.5, 1.0, &mc).unwrap();
        assert_eq!(r.verdict, Verdict::Refused);
        assert!(r.notes[0].contains("k > 1/2"));
        let none = MonteCarlo::new(0, 1);
        assert_eq!(density_gof(1.0, 0.5, 0.5, &none), Err(Error::EmptySample));
    }

    #[test]
    fn martingale_at_time_zero_is_trivial() {
        let r = martingale_test(1.0, 0.5, &[0.0], &MonteCarlo::new(50, 3)).unwrap();
        assert!(r.passed());
        assert_eq!(r.statistic, 0.0);
    }

    #[test]
    fn jump_law_without_jumps_is_inconclusive() {
        // horizon far too short for any jump
        let r = jump_law_test(1.0, 0.5, 1e-9, &MonteCarlo::new(20, 5)).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn reports_are_reproducible() {
        let mc = MonteCarlo::new(200, 77);
        let a = martingale_test(1.0, 0.5, &[0.1, 0.2], &mc).unwrap();
        let b = martingale_test(1.0, 0.5, &[0.1, 0.2], &mc).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn sub_seeds_differ() {
        assert_ne!(sub_seed(1, 1), sub_seed(1, 2));
        assert_ne!(sub_seed(1, 1), sub_seed(2, 1));
    }
}
