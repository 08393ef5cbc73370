use std::f64::consts::PI;

use super::gamma::{gamma, ln_gamma};
use crate::error::{Error, Result};

fn check_k(k: f64) -> Result<()> {
    if !(k.is_finite() && k > -0.5) {
        return Err(Error::domain(format!(
            "Gegenbauer polynomials need k > -1/2, got {k}"
        )));
    }
    if k == 0.0 {
        return Err(Error::domain(
            "Gegenbauer normalization degenerates at k = 0",
        ));
    }
    Ok(())
}

/// Streams `G_0^{(k)}(y), G_1^{(k)}(y), …` through the three-term recurrence
///
/// ```text
/// n G_n = 2y (n + k − 1) G_{n−1} − (n + 2k − 2) G_{n−2},   G_0 = 1,  G_1 = 2ky.
/// ```
#[derive(Debug, Clone)]
pub struct GegenbauerTerms {
    k: f64,
    y: f64,
    n: usize,
    prev: f64,
    cur: f64,
}

impl GegenbauerTerms {
    pub fn new(k: f64, y: f64) -> Result<Self> {
        check_k(k)?;
        Ok(GegenbauerTerms {
            k,
            y,
            n: 0,
            prev: 0.0,
            cur: 1.0,
        })
    }
}

impl Iterator for GegenbauerTerms {
    type Item = f64;

    #[inline]
    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let n = (self.n + 1) as f64;
        let next = if self.n == 0 {
            2.0 * self.k * self.y
        } else {
            (2.0 * self.y * (n + self.k - 1.0) * self.cur - (n + 2.0 * self.k - 2.0) * self.prev) / n
        };
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        Some(out)
    }
}

/// `G_n^{(k)}(y)` by forward recurrence.
pub fn gegenbauer_eval(n: usize, k: f64, y: f64) -> Result<f64> {
    Ok(GegenbauerTerms::new(k, y)?.nth(n).unwrap_or(0.0))
}

/// `[G_0(y), …, G_{n_max}(y)]`.
pub fn gegenbauer_sequence(n_max: usize, k: f64, y: f64) -> Result<Vec<f64>> {
    Ok(GegenbauerTerms::new(k, y)?.take(n_max + 1).collect())
}

/// Explicit alternating sum
///
/// ```text
/// G_n(y) = Γ(k)⁻¹ Σ_{m ≤ n/2} (−1)^m Γ(k + n − m) / (m! (n − 2m)!) (2y)^{n − 2m}.
/// ```
///
/// Only meant as an independent check for small `n`: the terms cancel
/// catastrophically once `n` grows past a dozen or so.
pub fn gegenbauer_explicit(n: usize, k: f64, y: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::domain(format!(
            "the explicit Gegenbauer sum needs k > 0, got {k}"
        )));
    }
    let gk = gamma(k)?;
    let mut sum = 0.0;
    for m in 0..=n / 2 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = gamma(k + (n - m) as f64)? / (gamma(m as f64 + 1.0)? * gamma((n - 2 * m) as f64 + 1.0)?);
        sum += sign * coeff * (2.0 * y).powi((n - 2 * m) as i32);
    }
    Ok(sum / gk)
}

/// `G_n^{(k)}(1) = Γ(2k + n) / (n! Γ(2k))`, the maximum of `|G_n|` on `[−1, 1]` for `k > 0`.
pub fn gegenbauer_at_one(n: usize, k: f64) -> Result<f64> {
    check_k(k)?;
    Ok((0..n).fold(1.0, |acc, i| acc * (2.0 * k + i as f64) / (i as f64 + 1.0)))
}

/// `ω_0^{(k)} = 2^{2k} Γ(k + 1)² / Γ(2k + 1)`, equal to `k Γ(k)² / (2^{1−2k} Γ(2k))`
/// but finite through `k ∈ (−½, 0)`.
fn norm_zero(k: f64) -> Result<f64> {
    Ok(2f64.powf(2.0 * k) * gamma(k + 1.0)?.powi(2) / gamma(2.0 * k + 1.0)?)
}

/// Ratio `ω_{n+1} / ω_n`.
#[inline]
pub(crate) fn norm_ratio(n: usize, k: f64) -> f64 {
    let n = n as f64;
    (n + 1.0) * (k + n + 1.0) / ((k + n) * (n + 2.0 * k))
}

/// `ω_n^{(k)} = n! (k + n) Γ(k)² / (2^{1−2k} Γ(n + 2k))`, the inverse squared
/// norm of `G_n` scaled so that `∫ G_n G_m (1 − x²)^{k−½} dx = π δ_{nm} / ω_n`.
pub fn gegenbauer_norm(n: usize, k: f64) -> Result<f64> {
    check_k(k)?;
    if k > 0.0 && n > 64 {
        let nf = n as f64;
        let ln = ln_gamma(nf + 1.0)? + (k + nf).ln() + 2.0 * ln_gamma(k)?
            - (1.0 - 2.0 * k) * std::f64::consts::LN_2
            - ln_gamma(nf + 2.0 * k)?;
        return Ok(ln.exp());
    }
    let mut w = norm_zero(k)?;
    for i in 0..n {
        w *= norm_ratio(i, k);
    }
    Ok(w)
}

/// Closed form of `∫_{−1}^{1} G_n^{(k)}(x) (1 − x²)^{k − 3/2} dx`:
/// `√π Γ(k − ½) / Γ(k)` for even `n`, zero for odd `n`. Diverges for `k ≤ ½`.
pub fn gegenbauer_weight_integral(n: usize, k: f64) -> Result<f64> {
    if !(k > 0.5 && k.is_finite()) {
        return Err(Error::domain(format!(
            "the weight (1 - x^2)^(k - 3/2) is not integrable for k = {k}; requires k > 1/2"
        )));
    }
    if n % 2 == 1 {
        return Ok(0.0);
    }
    Ok(PI.sqrt() * gamma(k - 0.5)? / gamma(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_polynomials() {
        assert_eq!(gegenbauer_eval(0, 0.3, 0.7).unwrap(), 1.0);
        assert_eq!(gegenbauer_eval(0, 2.5, 0.7).unwrap(), 1.0);
        assert_eq!(gegenbauer_eval(1, 1.0, 0.5).unwrap(), 1.0);
        // G_2 = 2k(k + 1)y² − k by hand expansion of the explicit sum.
        assert!(gegenbauer_eval(2, 1.0, 0.5).unwrap().abs() < 1e-15);
        for &(k, y) in &[(0.75, 0.3), (2.0, -0.8), (-0.25, 0.1)] {
            let by_hand = 2.0 * k * (k + 1.0) * y * y - k;
            assert!((gegenbauer_eval(2, k, y).unwrap() - by_hand).abs() < 1e-14);
        }
    }

    #[test]
    fn value_at_one() {
        // Γ(7) / (3! Γ(4)) = 720 / 36
        assert!((gegenbauer_eval(3, 2.0, 1.0).unwrap() - 20.0).abs() < 1e-12);
        assert!((gegenbauer_at_one(3, 2.0).unwrap() - 20.0).abs() < 1e-12);
        for n in 0..30 {
            let direct = gegenbauer_eval(n, 0.75, 1.0).unwrap();
            let closed = gamma(1.5 + n as f64).unwrap() / (gamma(n as f64 + 1.0).unwrap() * gamma(1.5).unwrap());
            assert!(((direct - closed) / closed).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        for n in 0..=12 {
            for &k in &[0.5, 0.75, 1.0, 2.0, 3.3] {
                let scale = gegenbauer_at_one(n, k).unwrap();
                for i in 0..=20 {
                    let y = -1.0 + 0.1 * i as f64;
                    let a = gegenbauer_eval(n, k, y).unwrap();
                    let b = gegenbauer_explicit(n, k, y).unwrap();
                    assert!((a - b).abs() <= 1e-10 * scale, "n={n} k={k} y={y}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn chebyshev_second_kind_at_k_one() {
        for n in 0..40 {
            for i in 1..50 {
                let theta = PI * i as f64 / 50.0;
                let lhs = gegenbauer_eval(n, 1.0, theta.cos()).unwrap() * theta.sin();
                assert!((lhs - ((n as f64 + 1.0) * theta).sin()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert!((gegenbauer_norm(0, 1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((gegenbauer_norm(1, 1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((gegenbauer_norm(0, 0.5).unwrap() - PI / 2.0).abs() < 1e-14);
        // k = 1: ω_n = 2 for all n.
        assert!((gegenbauer_norm(500, 1.0).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn norm_matches_gamma_formula() {
        for &k in &[0.5, 0.75, 1.0, 2.0, 3.7] {
            for n in [0usize, 1, 5, 17, 40, 64, 65, 90, 150] {
                let nf = n as f64;
                let formula = (ln_gamma(nf + 1.0).unwrap() + (k + nf).ln() + 2.0 * ln_gamma(k).unwrap()
                    - (1.0 - 2.0 * k) * std::f64::consts::LN_2
                    - ln_gamma(nf + 2.0 * k).unwrap())
                .exp();
                let w = gegenbauer_norm(n, k).unwrap();
                assert!(((w - formula) / formula).abs() < 1e-11, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn weight_integral_closed_form() {
        assert!((gegenbauer_weight_integral(0, 2.0).unwrap() - PI / 2.0).abs() < 1e-14);
        assert!((gegenbauer_weight_integral(2, 1.0).unwrap() - PI).abs() < 1e-14);
        assert_eq!(gegenbauer_weight_integral(3, 0.8).unwrap(), 0.0);
        assert!(gegenbauer_weight_integral(0, 0.5).is_err());
    }

    #[test]
    fn zero_multiplicity_is_rejected() {
        assert!(gegenbauer_eval(3, 0.0, 0.2).is_err());
        assert!(gegenbauer_norm(3, 0.0).is_err());
        assert!(gegenbauer_eval(3, -0.5, 0.2).is_err());
    }
}
