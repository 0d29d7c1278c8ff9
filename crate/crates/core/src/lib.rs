//! Exact constructions for p-adic noncommutative solenoids.

pub mod algebra;
pub mod error;
pub mod directed;
pub mod functions;
pub mod heisenberg;
pub mod padic;
pub mod phase;
pub mod scalar;
pub mod serial;
pub mod verify;

pub use error::{Error, Result};
pub use padic::{char_integral, Ball, BallRelation, PAdicRational, Valuation};
pub use phase::{PhaseExponent, PhasePolynomial, QSqrtP, ThetaLaurent, ThetaRationalFunction};
pub use scalar::Real;

pub type Rational = num_rational::BigRational;
pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
