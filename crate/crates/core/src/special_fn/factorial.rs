use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Pochhammer symbol `(a)_n = a (a + 1) ⋯ (a + n − 1)`.
pub fn rising_factorial(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// `[a]_n = a (a − 1) ⋯ (a − n + 1)`.
pub fn falling_factorial(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (a - i as f64))
}

pub fn rising_factorial_exact(a: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = a.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += BigRational::one();
    }
    acc
}

fn binomial(n: u32, j: u32) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..j {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// `Σ_{j=0}^{n} (−1)^{n−j} C(n, j) (k + j)_n` in exact rational arithmetic.
///
/// The sum equals `n!` for every `k`; it is the combinatorial heart of the
/// closed form for `∫ G_n (1 − x²)^{k − 3/2} dx`.
pub fn alternating_sum_identity(n: u32, k: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for j in 0..=n {
        let base = k + BigRational::from_integer(BigInt::from(j));
        let term = rising_factorial_exact(&base, n) * BigRational::from_integer(binomial(n, j));
        if (n - j) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
