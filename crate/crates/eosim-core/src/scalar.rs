//! Scalar abstraction for the whole crate.
//!
//! Every physical formula here is a rational function of the parameters
//! dressed with `sqrt`/`exp`/`log`, so the math is written once over a
//! generic real scalar and instantiated at `f32` or `f64`. The validated
//! tolerances (1e-9 .. 1e-12) are only meaningful in `f64`; the `f32`
//! instantiation exists for callers that trade accuracy for size.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::FromPrimitive;

/// Real scalar the simulator is generic over.
///
/// `RealField` supplies the transcendental functions and lets the same
/// bound drive the nalgebra decompositions; `FromPrimitive` converts the
/// literal constants that appear in the closed forms.
pub trait Scalar: RealField + FromPrimitive + Copy {
    /// Lift an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal conversion")
    }

    /// Base-2 logarithm (entropic quantities are in bits/ebits).
    #[inline]
    fn log2_(self) -> Self {
        self.ln() / Self::lit(std::f64::consts::LN_2)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over the crate scalar.
pub type C<T> = Complex<T>;

/// Imaginary unit.
#[inline]
pub fn im<T: Scalar>() -> C<T> {
    C::new(T::zero(), T::one())
}

/// Real number as a complex value.
#[inline]
pub fn re<T: Scalar>(x: T) -> C<T> {
    C::new(x, T::zero())
}

/// Magnitude of a complex value.
#[inline]
pub fn cabs<T: Scalar>(z: C<T>) -> T {
    z.norm_sqr().sqrt()
}
