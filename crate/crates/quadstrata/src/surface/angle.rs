// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exact angle accumulation.
//!
//! An angle is stored as a pair `(dir, h)` with value `arg(dir) + h·π`,
//! where `dir` is a non-zero Gaussian rational with `arg(dir) ∈ [0, π)`.
//! Adding two angles multiplies their directions and decides the wrap-around
//! with an exact half-plane test, so sums of corner angles are computed
//! without any approximation. An accumulated angle is an integer multiple
//! of `π` exactly when its direction is a positive real.

use std::fmt;

use crate::core::GaussianRational;

/// Exact angle `arg(dir) + half_turns·π`.
#[derive(Clone, PartialEq, Eq)]
pub struct AngleSum {
    dir: GaussianRational,
    half_turns: i64,
}

fn in_base_half_plane(d: &GaussianRational) -> bool {
    use num_traits::Signed;
    d.im().is_positive() || (d.im() == &crate::core::qi(0) && d.re().is_positive())
}

impl AngleSum {
    fn normalized(d: GaussianRational, h: i64) -> Self {
        assert!(!d.is_zero(), "angle with zero direction");
        let d = d.normalized_direction();
        if in_base_half_plane(&d) {
            Self {
                dir: d,
                half_turns: h,
            }
        } else {
            Self {
                dir: -d,
                half_turns: h + 1,
            }
        }
    }

    /// The zero angle.
    pub fn zero() -> Self {
        Self {
            dir: GaussianRational::one(),
            half_turns: 0,
        }
    }

    /// The angle `h·π`.
    pub fn half_turns(h: i64) -> Self {
        Self {
            dir: GaussianRational::one(),
            half_turns: h,
        }
    }

    /// Counter-clockwise sweep from direction `from` to direction `to`,
    /// taken in `(0, 2π]`; equal directions give `2π`.
    ///
    /// # Panics
    /// Panics if either direction is zero.
    pub fn sweep(from: &GaussianRational, to: &GaussianRational) -> Self {
        assert!(
            !from.is_zero() && !to.is_zero(),
            "sweep with zero direction"
        );
        let q = to * &from.conj();
        if q.is_positive_real() {
            Self::half_turns(2)
        } else {
            Self::normalized(q, 0)
        }
    }

    /// Sum of two angles.
    pub fn add(&self, other: &Self) -> Self {
        Self::normalized(&self.dir * &other.dir, self.half_turns + other.half_turns)
    }

    /// Opposite angle.
    pub fn neg(&self) -> Self {
        if self.dir.is_positive_real() {
            Self {
                dir: self.dir.clone(),
                half_turns: -self.half_turns,
            }
        } else {
            Self::normalized(-self.dir.conj(), -self.half_turns - 1)
        }
    }

    /// Difference `self − other`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Adds `h·π`.
    pub fn add_half_turns(&self, h: i64) -> Self {
        Self {
            dir: self.dir.clone(),
            half_turns: self.half_turns + h,
        }
    }

    /// The angle as a number of half turns, if it is an integer multiple of
    /// `π`.
    pub fn as_half_turns(&self) -> Option<i64> {
        self.dir.is_positive_real().then_some(self.half_turns)
    }

    /// Approximate value in units of `π` (presentation only).
    pub fn approx_in_pi(&self) -> f64 {
        let re = rat_to_f64(self.dir.re());
        let im = rat_to_f64(self.dir.im());
        im.atan2(re) / std::f64::consts::PI + self.half_turns as f64
    }
}

pub(crate) fn rat_to_f64(x: &crate::core::Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Debug for AngleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_half_turns() {
            Some(h) => write!(f, "{h}π"),
            None => write!(f, "arg({}) + {}π", self.dir, self.half_turns),
        }
    }
}
