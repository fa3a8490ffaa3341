//! Floating-point abstraction shared by every closed form and solver.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Real scalar the library computes in: `f32` or `f64`.
///
/// Accuracy targets quoted in the docs refer to `f64`; `f32` runs the same
/// algorithms at single precision.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumCast + Debug + Display + Send + Sync + 'static
{
    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("f64 literal representable")
    }

    /// Conversion from a count or index.
    #[inline]
    fn of_usize(n: usize) -> Self {
        <Self as NumCast>::from(n).expect("usize representable")
    }

    /// Value as `f64`, for diagnostics and error payloads.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
