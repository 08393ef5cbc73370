//! Gamma function, rising/falling factorials and Gegenbauer polynomials.
//!
//! Everything here is a pure function of its arguments.

mod factorial;
mod gamma;
mod gegenbauer;

pub use factorial::{
    alternating_sum_identity, falling_factorial, rising_factorial, rising_factorial_exact,
};
pub use gamma::{gamma, ln_gamma, trigamma};
pub(crate) use gegenbauer::norm_ratio;
pub use gegenbauer::{
    gegenbauer_at_one, gegenbauer_eval, gegenbauer_explicit, gegenbauer_norm,
    gegenbauer_sequence, gegenbauer_weight_integral, GegenbauerTerms,
};
