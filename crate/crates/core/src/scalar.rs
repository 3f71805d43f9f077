//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable as the real part of the complex carrier: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `true` when both components are finite.
#[inline]
pub fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Builds a complex number from two `f64` literals.
#[inline]
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Point `r e^{iθ}` on the circle of radius `r`.
#[inline]
pub fn polar<T: Real>(r: T, theta: T) -> Complex<T> {
    Complex::new(r * theta.cos(), r * theta.sin())
}

/// `true` when `w` sits on the principal-logarithm cut `(-inf, 0]`, up to `eps`.
#[inline]
pub fn on_branch_cut<T: Real>(w: Complex<T>, eps: T) -> bool {
    w.re <= T::zero() && w.im.abs() <= eps * (T::one() + w.re.abs())
}

/// Principal power `w^s = exp(s Log w)`, with `w^0 = 1` for every base.
#[inline]
pub fn principal_pow<T: Real>(w: Complex<T>, s: Complex<T>) -> Complex<T> {
    if s.re == T::zero() && s.im == T::zero() {
        return Complex::new(T::one(), T::zero());
    }
    (w.ln() * s).exp()
}
