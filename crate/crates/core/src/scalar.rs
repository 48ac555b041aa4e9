//! Floating-point scalar abstraction shared by the evaluators and the means.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Binary floating-point type the evaluators are generic over (`f32`, `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every literal used by the crate is finite,
    /// so the conversion cannot fail for the implementing types.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// `num / den` evaluated in `Self`.
    #[inline]
    fn ratio(num: i128, den: i128) -> Self {
        let n = Self::from_i128(num).expect("numerator in range");
        let d = Self::from_i128(den).expect("denominator in range");
        n / d
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff<T: Scalar>(a: T, b: T) -> T {
    let scale = a.abs().max(b.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (a - b).abs() / scale
    }
}
