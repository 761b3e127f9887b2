//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating point scalar the toolkit is generic over (`f32` or `f64`).
///
/// The associated tolerances are expressed in `f64` and converted on use, so
/// that single precision gets thresholds it can actually meet.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Allowed deviation of a probability vector's sum from one.
    const SUM_TOL: f64;
    /// Sup-norm change at which the output-distribution fixed point is accepted.
    const FIXED_POINT_TOL: f64;
    /// Final barrier weight of the interior-point polish.
    const BARRIER_END: f64;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const SUM_TOL: f64 = 1e-9;
    const FIXED_POINT_TOL: f64 = 1e-10;
    const BARRIER_END: f64 = 1e-13;
}

impl Real for f32 {
    const SUM_TOL: f64 = 1e-5;
    const FIXED_POINT_TOL: f64 = 1e-6;
    const BARRIER_END: f64 = 1e-7;
}

/// Floor applied to membership grades before taking logarithms.
pub const MEMBERSHIP_FLOOR: f64 = 1e-12;

/// `x * log2(y)` with the convention that a zero weight contributes nothing.
#[inline]
pub(crate) fn xlog2y<T: Real>(x: T, y: T) -> T {
    if x == T::zero() {
        T::zero()
    } else {
        x * y.log2()
    }
}

/// `log2(sum_k 2^{a_k})`, stable for large magnitudes.
pub(crate) fn log2_sum_exp2<T: Real>(vals: impl Iterator<Item = T> + Clone) -> T {
    let m = vals
        .clone()
        .fold(T::neg_infinity(), |acc, v| if v > acc { v } else { acc });
    if m == T::neg_infinity() {
        return m;
    }
    let s: T = vals.map(|v| (v - m).exp2()).sum();
    m + s.log2()
}
