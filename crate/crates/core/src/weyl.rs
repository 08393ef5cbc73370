//! The affine Weyl group of type Ã₁ and the jump measure `σˣ`.
//!
//! Group elements are the affine maps `x ↦ εx + 2m`, `ε = ±1`, `m ∈ ℤ`; the
//! reflection at the integer `p` is `s_p = (−1, p)`. The jump measure at a
//! point `x ∉ ℤ` picks `s_p` with probability `sin²(πx) / (π² (x − p)²)`;
//! these sum to one by `Σ_p (x − p)^{−2} = π² / sin²(πx)`.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::alcove::AlcovePoint;
use crate::error::{Error, Result};
use crate::special_fn::trigamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    /// `+1` or `−1`.
    pub epsilon: i8,
    /// Half the translation part.
    pub m: i64,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap { epsilon: 1, m: 0 };

    pub fn new(epsilon: i8, m: i64) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::domain(format!("epsilon must be ±1, got {epsilon}")));
        }
        Ok(AffineMap { epsilon, m })
    }

    /// `s_p : x ↦ −x + 2p`.
    pub fn reflection(p: i64) -> Self {
        AffineMap { epsilon: -1, m: p }
    }

    pub fn translation(m: i64) -> Self {
        AffineMap { epsilon: 1, m }
    }

    pub fn is_reflection(self) -> bool {
        self.epsilon == -1
    }

    /// `self ∘ first`.
    pub fn compose(self, first: AffineMap) -> Result<AffineMap> {
        let m = (self.epsilon as i64)
            .checked_mul(first.m)
            .and_then(|v| v.checked_add(self.m))
            .ok_or(Error::Overflow)?;
        Ok(AffineMap { epsilon: self.epsilon * first.epsilon, m })
    }

    pub fn inverse(self) -> Result<AffineMap> {
        // x = ε(y − 2m) = εy − 2εm
        let m = if self.epsilon == 1 { self.m.checked_neg().ok_or(Error::Overflow)? } else { self.m };
        Ok(AffineMap { epsilon: self.epsilon, m })
    }

    pub fn apply(self, x: f64) -> f64 {
        self.epsilon as f64 * x + 2.0 * self.m as f64
    }

    /// Image of an alcove point, with the offset carried exactly.
    pub fn apply_point(self, x: AlcovePoint) -> Result<AlcovePoint> {
        let twice = self.m.checked_mul(2).ok_or(Error::Overflow)?;
        if self.epsilon == 1 {
            Ok(AlcovePoint {
                alcove: x.alcove.checked_add(twice).ok_or(Error::Overflow)?,
                offset: x.offset,
            })
        } else {
            // −(a + u) + 2m = (2m − a − 1) + (1 − u)
            let alcove = twice
                .checked_sub(x.alcove)
                .and_then(|v| v.checked_sub(1))
                .ok_or(Error::Overflow)?;
            Ok(AlcovePoint { alcove, offset: 1.0 - x.offset })
        }
    }
}

impl std::fmt::Display for AffineMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = if self.epsilon == 1 { "" } else { "-" };
        write!(f, "x -> {sign}x + {}", 2 * self.m as i128)
    }
}

/// `s_p(x) = −x + 2p`.
pub fn reflect(p: i64, x: f64) -> f64 {
    -x + 2.0 * p as f64
}

pub fn compose(w2: AffineMap, w1: AffineMap) -> Result<AffineMap> {
    w2.compose(w1)
}

pub fn apply(w: AffineMap, x: f64) -> f64 {
    w.apply(x)
}

/// Enumerated part of `σˣ` and the mass it leaves out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpDistribution {
    pub center: f64,
    /// `(p, weight)`, ordered by distance of `p` to the center.
    pub weights: Vec<(i64, f64)>,
    /// Mass of the integers not listed, `(sin²(πx)/π²)(ψ′(R − v) + ψ′(L + v))`
    /// with `v` the offset and the listed range `[a − L + 1, a + R − 1]`.
    pub tail_mass: f64,
}

impl JumpDistribution {
    pub fn partial_mass(&self) -> f64 {
        // smallest weights first
        self.weights.iter().rev().map(|&(_, w)| w).sum()
    }

    /// `1 − Σ listed weights`.
    pub fn residual(&self) -> f64 {
        1.0 - self.partial_mass()
    }

    pub fn weight(&self, p: i64) -> Option<f64> {
        self.weights.iter().find(|&&(q, _)| q == p).map(|&(_, w)| w)
    }
}

/// `σˣ(s_p)` for the point with the given alcove offset, `j = p − alcove`.
#[inline]
pub fn weight_at(offset: f64, j: i64) -> f64 {
    let s = (PI * offset).sin();
    let d = offset - j as f64;
    s * s / (PI * PI * d * d)
}

/// Masses `(Σ_{j ≤ −left}, Σ_{j > right})` of the weights outside `j ∈ [−left + 1, right]`.
pub fn tail_masses(offset: f64, left: i64, right: i64) -> (f64, f64) {
    let s = (PI * offset).sin();
    let c = s * s / (PI * PI);
    let r = c * trigamma(right as f64 + 1.0 - offset).expect("argument exceeds 1");
    let l = c * trigamma(left as f64 + offset).expect("argument exceeds 1");
    (l, r)
}

/// Weights of `σˣ` listed outward from the two integers next to `x`, until
/// the unlisted mass is at most `tail_tol`.
pub fn jump_weights(x: f64, tail_tol: f64) -> Result<JumpDistribution> {
    if !(tail_tol > 0.0 && tail_tol <= 1e-6) {
        return Err(Error::domain(format!("tail_tol must lie in (0, 1e-6], got {tail_tol}")));
    }
    let point = AlcovePoint::from_value(x)?;
    let v = point.offset;
    let mut weights = Vec::new();
    // left side j = 0, −1, … ; right side j = 1, 2, …
    let (mut left, mut right) = (0i64, 0i64);
    loop {
        let next_left = v + left as f64;
        let next_right = (right + 1) as f64 - v;
        if next_left <= next_right {
            weights.push((point.alcove - left, weight_at(v, -left)));
            left += 1;
        } else {
            right += 1;
            weights.push((point.alcove + right, weight_at(v, right)));
        }
        if weights.len() % 64 == 0 {
            let (l, r) = tail_masses(v, left, right);
            if l + r <= tail_tol {
                return Ok(JumpDistribution { center: x, weights, tail_mass: l + r });
            }
        }
    }
}

/// Integers listed explicitly on each side before falling back to the tails.
pub const WINDOW: i64 = 64;

/// Inverse-CDF sampler for `σˣ` at a fixed point.
///
/// The 2·64 integers nearest to `x` are searched in order of distance; the
/// remaining mass (computed from trigamma) is split between the two tails,
/// which are sampled exactly by rejection from the continuous density
/// `a / (a + u)²` on `u ≥ 0`.
#[derive(Debug, Clone)]
pub struct ReflectionSampler {
    alcove: i64,
    offset: f64,
    ordered: Vec<(i64, f64)>,
    left_tail: f64,
    right_tail: f64,
}

impl ReflectionSampler {
    pub fn new(x: AlcovePoint) -> Self {
        let v = x.offset;
        let mut ordered = Vec::with_capacity(2 * WINDOW as usize);
        let (mut left, mut right) = (0i64, 0i64);
        while left < WINDOW || right < WINDOW {
            let take_left = right == WINDOW || (left < WINDOW && v + left as f64 <= (right + 1) as f64 - v);
            if take_left {
                ordered.push((-left, weight_at(v, -left)));
                left += 1;
            } else {
                right += 1;
                ordered.push((right, weight_at(v, right)));
            }
        }
        let (left_tail, right_tail) = tail_masses(v, WINDOW, WINDOW);
        ReflectionSampler { alcove: x.alcove, offset: v, ordered, left_tail, right_tail }
    }

    pub fn at(x: f64) -> Result<Self> {
        Ok(Self::new(AlcovePoint::from_value(x)?))
    }

    /// Inverse CDF over the listed integers; `None` when `u` falls in the tails.
    pub fn pick(&self, u: f64) -> Option<i64> {
        let mut rest = u;
        for &(j, w) in &self.ordered {
            if rest < w {
                return Some(self.alcove + j);
            }
            rest -= w;
        }
        None
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let u: f64 = rng.random();
        if let Some(p) = self.pick(u) {
            return p;
        }
        let tails = self.left_tail + self.right_tail;
        if rng.random::<f64>() * tails < self.right_tail {
            // j = WINDOW + 1 + i, distance a + i with a = WINDOW + 1 − v
            self.alcove + WINDOW + 1 + sample_tail(WINDOW as f64 + 1.0 - self.offset, rng)
        } else {
            // j = −WINDOW − i, distance a + i with a = WINDOW + v
            self.alcove - WINDOW - sample_tail(WINDOW as f64 + self.offset, rng)
        }
    }
}

/// Draws `i ≥ 0` with probability proportional to `(a + i)^{−2}`, `a ≥ 1`.
fn sample_tail<R: Rng + ?Sized>(a: f64, rng: &mut R) -> i64 {
    // Proposal: floor of U with density a/(a + u)², whose mass on [i, i + 1)
    // is a / ((a + i)(a + i + 1)); the target over the proposal is
    // proportional to (a + i + 1)/(a + i), largest at i = 0.
    let bound = (a + 1.0) / a;
    loop {
        let w: f64 = rng.random();
        let u = a * w / (1.0 - w);
        if u >= 9.0e18 {
            continue;
        }
        let i = u.floor();
        let accept = (a + i + 1.0) / (a + i) / bound;
        if rng.random::<f64>() < accept {
            return i as i64;
        }
    }
}

/// Samples `p` from `σˣ`.
pub fn sample_reflection<R: Rng + ?Sized>(x: f64, rng: &mut R) -> Result<i64> {
    Ok(ReflectionSampler::at(x)?.sample(rng))
}
