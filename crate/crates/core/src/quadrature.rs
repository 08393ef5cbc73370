//! One-dimensional quadrature used by the spectral and validation code.
//!
//! * [`tanh_sinh`] – double-exponential rule, robust to integrable algebraic
//!   singularities at the end points.
//! * [`gauss_kronrod`] – globally adaptive 7/15-point Gauss–Kronrod.
//! * [`GaussLegendre`] – fixed rule for panel sums.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    /// Estimate of the absolute error.
    pub error: f64,
}

impl Quad {
    pub fn converged(&self, tol: f64) -> bool {
        self.value.is_finite() && self.error <= tol * self.value.abs().max(1.0)
    }
}

const TS_MAX_LEVEL: u32 = 12;
const TS_T_MAX: f64 = 6.1;

/// Double-exponential (tanh-sinh) quadrature of `f` over `(a, b)`.
///
/// `f` is never evaluated at the end points themselves. Abscissae are built
/// from their distance to the nearer end point, so when `a = 0` the nodes
/// close to `a` are exact tiny numbers; integrands singular at a nonzero end
/// point should be shifted so the singular end sits at the origin.
/// Refinement halves the step until two levels agree to
/// `tol · max(1, |I|)`.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Quad {
    if a == b {
        return Quad { value: 0.0, error: 0.0 };
    }
    let half = 0.5 * (b - a);
    let node = |t: f64| -> Option<(f64, f64)> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // distance from the nearer end point
        let d = (b - a) * e / (1.0 + e);
        let x = if t < 0.0 { a + d } else { b - d };
        let w = half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if w == 0.0 || !(x > a.min(b) && x < a.max(b)) {
            None
        } else {
            Some((x, w))
        }
    };
    let eval = |t: f64| -> f64 {
        match node(t) {
            Some((x, w)) => w * f(x),
            None => 0.0,
        }
    };

    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut j = 1;
    while j as f64 * h <= TS_T_MAX {
        let t = j as f64 * h;
        sum += eval(t) + eval(-t);
        j += 1;
    }
    let mut estimate = h * sum;
    let mut error = f64::INFINITY;
    for _ in 1..=TS_MAX_LEVEL {
        h *= 0.5;
        let mut odd = 0.0;
        let mut j = 1;
        while j as f64 * h <= TS_T_MAX {
            let t = j as f64 * h;
            odd += eval(t) + eval(-t);
            j += 2;
        }
        sum += odd;
        let next = h * sum;
        error = (next - estimate).abs();
        estimate = next;
        if !estimate.is_finite() {
            break;
        }
        if error <= tol * estimate.abs().max(1.0) {
            break;
        }
    }
    Quad {
        value: estimate,
        error,
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = r * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * r, ((kron - gauss) * r).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod: the panel with the largest error estimate
/// is bisected until the summed estimate drops below `tol · max(1, |I|)`.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Quad {
    const MAX_PANELS: usize = 4000;
    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    while total_err > tol * total.abs().max(1.0) && heap.len() < MAX_PANELS {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b)) {
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // Re-sum to shed the drift of the running updates.
    let (value, error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    Quad { value, error }
}

/// Fixed `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * pn - pm) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        r * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(c + r * x))
            .sum::<f64>()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        // ∫₀¹ x^{-1/2} dx = 2
        let q = tanh_sinh(|x| x.powf(-0.5), 0.0, 1.0, 1e-13);
        assert!((q.value - 2.0).abs() < 1e-12, "{q:?}");
        // ∫₀¹ x^{-0.9} dx = 10
        let q = tanh_sinh(|x| x.powf(-0.9), 0.0, 1.0, 1e-12);
        assert!((q.value - 10.0).abs() < 1e-9, "{q:?}");
        // ∫₀^π sin x dx = 2
        let q = tanh_sinh(f64::sin, 0.0, PI, 1e-14);
        assert!((q.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn kronrod_smooth_and_oscillatory() {
        let q = gauss_kronrod(f64::exp, 0.0, 1.0, 1e-14);
        assert!((q.value - (1f64.exp() - 1.0)).abs() < 1e-14);
        let q = gauss_kronrod(|x| (40.0 * x).cos(), 0.0, PI, 1e-12);
        assert!(q.value.abs() < 1e-11);
        let q = gauss_kronrod(|x| x.sqrt(), 0.0, 1.0, 1e-12);
        assert!((q.value - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let gl = GaussLegendre::new(10);
        // degree 19 integrates exactly
        let v = gl.integrate(|x| x.powi(18) + x.powi(19), -1.0, 1.0);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
        let v = gl.integrate(|x| 3.0 * x * x, 0.0, 2.0);
        assert!((v - 8.0).abs() < 1e-13);
        assert!((GaussLegendre::new(1).integrate(|x| x + 1.0, 0.0, 1.0) - 1.5).abs() < 1e-15);
    }
}
