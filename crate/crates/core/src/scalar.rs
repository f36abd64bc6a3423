//! Numeric abstraction shared by every solver in the crate.
//!
//! Distances, weights and radii are generic over [`Scalar`]. Floating types
//! (`f32`, `f64`) are the usual choice; signed integers give exact arithmetic
//! for integer-weighted instances.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, NumAssign, ToPrimitive};

/// A totally usable distance value: closed under `+`, comparable, and
/// convertible to and from `f64` for reporting.
pub trait Scalar:
    Num + NumAssign + Copy + PartialOrd + Debug + Default + ToPrimitive + FromPrimitive + Send + Sync + 'static
{
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Converts from `f64`; integer types truncate toward zero.
    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).unwrap_or_else(Self::zero)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn is_negative_value(self) -> bool {
        self < Self::zero()
    }
}

impl<T> Scalar for T where
    T: Num
        + NumAssign
        + Copy
        + PartialOrd
        + Debug
        + Default
        + ToPrimitive
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Sums an iterator of scalars.
pub fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}

/// `a <= b` up to a relative tolerance, evaluated in `f64`.
pub fn le_rel(a: f64, b: f64, rel: f64) -> bool {
    a <= b + rel * a.abs().max(b.abs())
}

/// Ratio `num / den` with the convention `0 / 0 = 0` and `x / 0 = inf` for `x > 0`.
pub fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}
