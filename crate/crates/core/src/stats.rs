//! Sample summaries and the two goodness-of-fit statistics used by the
//! validation suite.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Mean with its standard error `s / √n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
    pub n: usize,
}

impl MeanSe {
    pub fn of(sample: &[f64]) -> Result<Self> {
        let n = sample.len();
        if n == 0 {
            return Err(Error::EmptySample);
        }
        let mean = sample.iter().sum::<f64>() / n as f64;
        if n == 1 {
            return Ok(MeanSe { mean, se: f64::INFINITY, n });
        }
        let ss: f64 = sample.iter().map(|v| (v - mean) * (v - mean)).sum();
        let sd = (ss / (n - 1) as f64).sqrt();
        Ok(MeanSe { mean, se: sd / (n as f64).sqrt(), n })
    }

    /// `|mean − target| / se`, zero when both vanish.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.se
        }
    }
}

/// Cumulative distribution of a density on `(0, 1)`, tabulated on equal
/// cells by Gauss–Legendre and rescaled to total mass one.
#[derive(Debug, Clone)]
pub struct CdfTable {
    cumulative: Vec<f64>,
    raw_mass: f64,
}

impl CdfTable {
    pub fn new<F: Fn(f64) -> f64>(density: F, cells: usize) -> Result<Self> {
        if cells == 0 {
            return Err(Error::domain("a CDF table needs at least one cell"));
        }
        let rule = GaussLegendre::new(10);
        let h = 1.0 / cells as f64;
        let mut cumulative = Vec::with_capacity(cells + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for i in 0..cells {
            let a = i as f64 * h;
            acc += rule.integrate(&density, a, a + h);
            cumulative.push(acc);
        }
        if !(acc > 0.0 && acc.is_finite()) {
            return Err(Error::domain("density has no positive finite mass"));
        }
        for c in &mut cumulative {
            *c /= acc;
        }
        Ok(CdfTable { cumulative, raw_mass: acc })
    }

    /// Mass before renormalization.
    pub fn raw_mass(&self) -> f64 {
        self.raw_mass
    }

    /// CDF at `x`, linear between cell edges.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let cells = self.cumulative.len() - 1;
        let pos = x * cells as f64;
        let i = (pos.floor() as usize).min(cells - 1);
        let w = pos - i as f64;
        self.cumulative[i] + w * (self.cumulative[i + 1] - self.cumulative[i])
    }
}

/// `sup |F_n − F|` for a sample against a continuous CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(d)
}

/// Stephens' finite-sample scaling `D (√n + 0.12 + 0.11/√n)`.
pub fn ks_scaled(d: f64, n: usize) -> f64 {
    let r = (n as f64).sqrt();
    d * (r + 0.12 + 0.11 / r)
}

/// Upper 1% point of the Kolmogorov distribution.
pub const KS_CRITICAL_01: f64 = 1.6276;

/// `P(K > λ) = 2 Σ_{j ≥ 1} (−1)^{j−1} e^{−2j²λ²}`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let jf = j as f64;
        let term = (-2.0 * jf * jf * lambda * lambda).exp();
        sum += if j % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Pearson statistic over the categories with positive expectation.
pub fn chi_square_statistic(observed: &[f64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&o, &e)| (o - e) * (o - e) / e)
        .sum()
}

pub fn chi_square_sf(statistic: f64, df: usize) -> Result<f64> {
    let dist = ChiSquared::new(df as f64).map_err(|e| Error::domain(e.to_string()))?;
    Ok(dist.sf(statistic))
}

pub fn chi_square_quantile(p: f64, df: usize) -> Result<f64> {
    let dist = ChiSquared::new(df as f64).map_err(|e| Error::domain(e.to_string()))?;
    Ok(dist.inverse_cdf(p))
}

/// Merges categories, in order, until each merged expectation reaches `min`;
/// a short remainder is folded into the last group.
pub fn merge_small(observed: &[f64], expected: &[f64], min: f64) -> (Vec<f64>, Vec<f64>) {
    let (mut obs, mut exp) = (Vec::new(), Vec::new());
    let (mut o_acc, mut e_acc) = (0.0, 0.0);
    for (&o, &e) in observed.iter().zip(expected) {
        o_acc += o;
        e_acc += e;
        if e_acc >= min {
            obs.push(o_acc);
            exp.push(e_acc);
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if e_acc > 0.0 || o_acc > 0.0 {
        match (obs.last_mut(), exp.last_mut()) {
            (Some(o), Some(e)) => {
                *o += o_acc;
                *e += e_acc;
            }
            _ => {
                obs.push(o_acc);
                exp.push(e_acc);
            }
        }
    }
    (obs, exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_standard_error() {
        let m = MeanSe::of(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.mean, 2.5);
        assert!((m.se - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(MeanSe::of(&[]), Err(Error::EmptySample));
        assert_eq!(MeanSe::of(&[1.0, 1.0]).unwrap().z_score(1.0), 0.0);
    }

    #[test]
    fn cdf_table_of_a_polynomial_density() {
        let t = CdfTable::new(|x| 6.0 * x * (1.0 - x), 100).unwrap();
        assert!((t.raw_mass() - 1.0).abs() < 1e-14);
        for &x in &[0.1, 0.5, 0.83] {
            let exact = 3.0 * x * x - 2.0 * x * x * x;
            assert!((t.cdf(x) - exact).abs() < 1e-4);
        }
        assert_eq!(t.cdf(1.0), 1.0);
        // mass is renormalized
        let t = CdfTable::new(|_| 2.0, 10).unwrap();
        assert!((t.cdf(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_on_a_perfect_grid() {
        let n = 1000;
        let sample: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&sample, |x| x).unwrap();
        assert!((d - 0.5 / n as f64).abs() < 1e-12);
        assert!(ks_statistic(&[], |x| x).is_err());
    }

    #[test]
    fn kolmogorov_tail() {
        assert!((kolmogorov_sf(KS_CRITICAL_01) - 0.01).abs() < 1e-4);
        assert!((kolmogorov_sf(1.3581) - 0.05).abs() < 1e-4);
        assert_eq!(kolmogorov_sf(0.0), 1.0);
    }

    #[test]
    fn chi_square_reference_points() {
        // 0.99 quantiles: df 1 → 6.6349, df 5 → 15.0863
        assert!((chi_square_quantile(0.99, 1).unwrap() - 6.634_896_6).abs() < 1e-5);
        assert!((chi_square_quantile(0.99, 5).unwrap() - 15.086_272).abs() < 1e-5);
        assert!((chi_square_sf(15.086_272, 5).unwrap() - 0.01).abs() < 1e-6);
        assert_eq!(chi_square_statistic(&[10.0, 20.0], &[10.0, 20.0]), 0.0);
    }

    #[test]
    fn merging_small_expectations() {
        let (o, e) = merge_small(&[1.0, 2.0, 30.0, 1.0], &[2.0, 3.0, 28.0, 1.5], 5.0);
        assert_eq!(e, vec![5.0, 29.5]);
        assert_eq!(o, vec![3.0, 31.0]);
    }
}
