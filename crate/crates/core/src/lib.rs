//! Simulation and verification toolkit for the affine Dunkl process of type Ã₁.
//!
//! The affine Dunkl process with multiplicity `k ≥ ½` is the jump process on
//! `ℝ ∖ ℤ` with generator
//!
//! ```text
//! A u(x) = ½ u''(x) + kπ cot(πx) u'(x) + (k/2) Σ_p [u(2p − x) − u(x)] / (x − p)²
//! ```
//!
//! It is built here as a skew product `Y_t = w_{η_t} · X_t`, where `X` is the
//! radial diffusion confined to an alcove `(m, m + 1)`, `η_t` is the additive
//! functional `(kπ²/2) ∫₀ᵗ ds / sin²(πX_s)` and `w` is a pure jump process on
//! the affine Weyl group driven by a unit-rate Poisson clock.
//!
//! Module map:
//!
//! * [`special_fn`] – Gamma, factorials, Gegenbauer polynomials.
//! * [`spectral`] – eigenfunction expansion of the radial transition density.
//! * [`radial`] – adaptive Euler–Maruyama simulation of the radial diffusion.
//! * [`weyl`] – the affine Weyl group and the jump measure `σˣ`.
//! * [`skew_product`] – assembly of the full jump process.
//! * [`validate`] – statistical and identity checks producing JSON reports.
//! * [`cli`] – the command-line front end.

pub mod alcove;
pub mod cli;
pub mod error;
pub mod multiplicity;
pub mod quadrature;
pub mod radial;
pub mod rng;
pub mod skew_product;
pub mod special_fn;
pub mod spectral;
pub mod stats;
pub mod validate;
pub mod weyl;

pub use alcove::AlcovePoint;
pub use error::{Error, Result};
pub use multiplicity::Multiplicity;
pub use radial::{simulate_radial, PathSample, StepPolicy};
pub use rng::PathSeed;
pub use skew_product::{simulate_affine_dunkl, DunklTrajectory, JumpEvent};
pub use spectral::SpectralTruncation;
pub use weyl::AffineMap;
