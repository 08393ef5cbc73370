//! Points of `ℝ ∖ ℤ` split into an alcove index and an offset inside it.
//!
//! Keeping the offset separate preserves the full precision of distances to
//! the walls, which is what the drift, the jump weights and `η` depend on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `alcove + offset` with `offset ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlcovePoint {
    pub alcove: i64,
    pub offset: f64,
}

impl AlcovePoint {
    pub fn new(alcove: i64, offset: f64) -> Result<Self> {
        if offset > 0.0 && offset < 1.0 {
            Ok(AlcovePoint { alcove, offset })
        } else {
            Err(Error::domain(format!(
                "alcove offset {offset} is not in the open interval (0, 1)"
            )))
        }
    }

    /// Splits `x` into `floor(x)` and the fractional part.
    pub fn from_value(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain(format!("non-finite point {x}")));
        }
        let floor = x.floor();
        let offset = x - floor;
        if offset == 0.0 {
            return Err(Error::IntegerPoint(x));
        }
        if floor.abs() >= 9.0e15 {
            return Err(Error::domain(format!("point {x} is too large to resolve its alcove")));
        }
        Ok(AlcovePoint {
            alcove: floor as i64,
            offset,
        })
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.alcove as f64 + self.offset
    }

    /// Distance to the nearest wall of the alcove.
    #[inline]
    pub fn wall_distance(self) -> f64 {
        self.offset.min(1.0 - self.offset)
    }

    /// Image in the principal alcove `(0, 1)` under the affine Weyl group.
    #[inline]
    pub fn principal(self) -> f64 {
        if self.alcove.rem_euclid(2) == 0 {
            self.offset
        } else {
            1.0 - self.offset
        }
    }
}

/// Image of an arbitrary real in the principal alcove `[0, 1]` under the
/// affine Weyl group (reduction mod 2 followed by the reflection at 1).
pub fn principal_projection(y: f64) -> f64 {
    let r = y.rem_euclid(2.0);
    if r <= 1.0 {
        r
    } else {
        2.0 - r
    }
}
