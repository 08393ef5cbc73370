use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiplicity parameter `k` of a simulated process.
///
/// Only `k ≥ ½` is representable: below that the radial diffusion leaves its
/// alcove in finite time and the construction breaks down.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Multiplicity(f64);

impl Multiplicity {
    pub const CRITICAL: f64 = 0.5;

    pub fn new(k: f64) -> Result<Self> {
        if k.is_finite() && k >= Self::CRITICAL {
            Ok(Multiplicity(k))
        } else {
            Err(Error::Multiplicity {
                k,
                requirement: "k >= 1/2 (the radial process leaves its alcove when k < 1/2)",
            })
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `k = ½`, where the radial process still never exits but `E[η_t] = +∞`.
    pub fn is_critical(self) -> bool {
        self.0 == Self::CRITICAL
    }

    /// Rejects `k = ½` for quantities whose expectation diverges there.
    pub fn require_finite_expectation(self) -> Result<Self> {
        if self.0 > Self::CRITICAL {
            Ok(self)
        } else {
            Err(Error::InfiniteExpectation { k: self.0 })
        }
    }
}

impl TryFrom<f64> for Multiplicity {
    type Error = Error;

    fn try_from(k: f64) -> Result<Self> {
        Multiplicity::new(k)
    }
}

impl From<Multiplicity> for f64 {
    fn from(k: Multiplicity) -> f64 {
        k.0
    }
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_subcritical_and_nonfinite() {
        assert!(Multiplicity::new(0.4).is_err());
        assert!(Multiplicity::new(f64::NAN).is_err());
        assert!(Multiplicity::new(f64::INFINITY).is_err());
        assert!(Multiplicity::new(0.5).unwrap().is_critical());
    }

    #[test]
    fn finite_expectation_needs_strictly_supercritical() {
        let half = Multiplicity::new(0.5).unwrap();
        assert_eq!(
            half.require_finite_expectation(),
            Err(Error::InfiniteExpectation { k: 0.5 })
        );
        assert!(Multiplicity::new(0.75).unwrap().require_finite_expectation().is_ok());
    }
}
