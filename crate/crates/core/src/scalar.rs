//! Scalar abstraction shared by every numeric container in the crate.
//!
//! Physical quantities (seconds, hertz) stay in `f64`; sample values, channel
//! coefficients and phases are generic over [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + FftNum
    + Default
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal or physical value into this scalar.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Real")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }

    /// Tolerance used for the unit-modulus check on phase vectors.
    #[inline]
    fn unit_modulus_tolerance() -> Self {
        Self::of(1e-12).max(Self::epsilon() * Self::of(100.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `e^{j·phase}` with the phase given in radians as `f64`.
#[inline]
pub fn cis<T: Real>(phase: f64) -> Complex<T> {
    Complex::new(T::of(phase.cos()), T::of(phase.sin()))
}

/// Widens a complex sample to `f64`.
#[inline]
pub fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.as_f64(), z.im.as_f64())
}

#[inline]
pub fn from_c64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::of(z.re), T::of(z.im))
}
