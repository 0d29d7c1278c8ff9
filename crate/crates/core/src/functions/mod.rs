//! Function spaces on `Q_p` and `R`: locally constant test functions on
//! ball partitions, Gaussian Gabor atoms with exact `θ`-dependent centers and
//! frequencies, and their overlap integrals.

pub(crate) mod balls;
mod gauss;
mod qp;
mod quad;
mod real;

pub use gauss::{atom_overlap, overlap, overlap_integral, GaussKey, InnerValue};
pub use qp::{mrs_ball, TestFunctionQp};
pub use quad::adaptive_simpson;
pub use real::{AtomShape, RealFunction};

pub(crate) use balls::BallValue;
pub(crate) use qp::{char_refine, PhaseScalable};

#[cfg(test)]
mod tests;
