//! Floating-point scalars used by the numeric layer.

use std::fmt::Debug;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

pub fn from_rational<T: Real>(r: &BigRational) -> T {
    T::from_f64(r.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(T::nan)
}

pub fn from_f64<T: Real>(x: f64) -> T {
    T::from_f64(x).unwrap_or_else(T::nan)
}

/// `e^{2πi x}`.
pub fn cis_turns<T: Real>(x: T) -> Complex<T> {
    let ang = T::TAU() * x;
    Complex::new(ang.cos(), ang.sin())
}
