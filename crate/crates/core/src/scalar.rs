//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal. Never fails for `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count.
    #[inline]
    fn of(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Maximum of a slice, `-inf` for an empty slice. NaN entries are skipped.
pub fn max_of<T: Real>(xs: &[T]) -> T {
    xs.iter()
        .copied()
        .filter(|x| !x.is_nan())
        .fold(T::neg_infinity(), T::max)
}

/// Relative comparison with absolute floor, used by verdict logic.
pub fn le_tol<T: Real>(a: T, b: T, rel: T) -> bool {
    a <= b + rel * (T::one() + b.abs())
}
