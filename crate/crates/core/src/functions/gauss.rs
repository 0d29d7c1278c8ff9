use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_rational::BigRational;

use super::real::{AtomShape, RealFunction};
use crate::error::Result;
use crate::phase::{PhaseExponent, PhasePolynomial, ThetaLaurent};
use crate::scalar::{cis_turns, from_rational, Real};

/// The real factor `θ^k A^{-1/2} e^{-π Q(θ)} e^{2πi ρ(θ)}` of a Gaussian
/// integral, with `ρ` free of the powers `θ^{-1}, θ^0, θ^1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussKey {
    pub width_sum: BigRational,
    pub theta_pow: i32,
    pub damping: ThetaLaurent,
    pub residual: ThetaLaurent,
}

impl GaussKey {
    pub fn eval<T: Real>(&self, theta: T) -> Complex<T> {
        let a: T = from_rational(&self.width_sum);
        let mag = theta.powi(self.theta_pow) / a.sqrt() * (-T::PI() * self.damping.eval(theta)).exp();
        cis_turns(self.residual.eval(theta)) * mag
    }

    fn conj(&self) -> GaussKey {
        GaussKey { residual: -&self.residual, ..self.clone() }
    }
}

impl fmt::Debug for GaussKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t^{} A={} Q={} res={}",
            self.theta_pow, self.width_sum, self.damping, self.residual
        )
    }
}

/// An exact sum `Σ c_k · G_k` of phase polynomials times Gaussian factors.
#[derive(Clone, PartialEq, Eq)]
pub struct InnerValue {
    p: u32,
    terms: BTreeMap<GaussKey, PhasePolynomial>,
}

impl InnerValue {
    pub fn zero(p: u32) -> Self {
        InnerValue { p, terms: BTreeMap::new() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<GaussKey, PhasePolynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, key: GaussKey, c: PhasePolynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                *old = &*old + &c;
                if old.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &InnerValue) -> InnerValue {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &PhasePolynomial) -> InnerValue {
        let mut out = InnerValue::zero(self.p);
        for (k, v) in &self.terms {
            out.push(k.clone(), v * c);
        }
        out
    }

    pub fn mul_phase(&self, e: &PhaseExponent) -> InnerValue {
        let mut out = InnerValue::zero(self.p);
        for (k, v) in &self.terms {
            out.push(k.clone(), v.mul_phase(e));
        }
        out
    }

    /// Multiplies by `θ^k`.
    pub fn mul_theta_pow(&self, k: i32) -> InnerValue {
        let mut out = InnerValue::zero(self.p);
        for (key, v) in &self.terms {
            let key = GaussKey { theta_pow: key.theta_pow + k, ..key.clone() };
            out.push(key, v.clone());
        }
        out
    }

    pub fn conj(&self) -> InnerValue {
        let mut out = InnerValue::zero(self.p);
        for (k, v) in &self.terms {
            out.push(k.conj(), v.conj());
        }
        out
    }

    pub fn eval<T: Real>(&self, theta: T) -> Result<Complex<T>> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (k, v) in &self.terms {
            acc = acc + k.eval(theta) * v.eval(theta)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for InnerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Closed form of `∫ e^{-2πitc} g1(t) conj(g2(t+s)) dt` for two atoms, split
/// into a Gaussian factor and a lattice phase.
///
/// With `A = a1+a2`, `ν = μ2-s`, `m = (a1μ1+a2ν)/A`, `Ω = ω1-ω2-c` the value
/// is `A^{-1/2} e^{-π(a1a2(μ1-ν)²/A + Ω²/A)} e^{2πi(Ωm - ω2 s + ρ1 - ρ2)}`.
pub fn atom_overlap(
    g1: &AtomShape,
    g2: &AtomShape,
    s: &ThetaLaurent,
    c: &ThetaLaurent,
) -> (GaussKey, PhaseExponent) {
    let a1 = &g1.width;
    let a2 = &g2.width;
    let big_a = a1 + a2;
    let inv_a = big_a.recip();
    let nu = &g2.center - s;
    let m = &(&g1.center.scale(a1) + &nu.scale(a2)).scale(&inv_a);
    let diff = &g1.center - &nu;
    let spread = (&diff * &diff).scale(&(a1 * a2 * &inv_a));
    let omega = &(&g1.freq - &g2.freq) - c;
    let damping = &spread + &(&omega * &omega).scale(&inv_a);
    let phase = &(&(&omega * m) - &(&g2.freq * s)) + &(&g1.residual - &g2.residual);
    let (lattice, residual) = phase.split_phase();
    let key = GaussKey { width_sum: big_a, theta_pow: 0, damping, residual };
    (key, lattice)
}

/// `∫ e^{-2πitc} f(t) conj(g(t+s)) dt` as an exact [`InnerValue`].
pub fn overlap(f: &RealFunction, g: &RealFunction, s: &ThetaLaurent, c: &ThetaLaurent) -> InnerValue {
    let mut out = InnerValue::zero(f.p());
    for (s1, c1) in f.atoms() {
        for (s2, c2) in g.atoms() {
            let (key, lattice) = atom_overlap(s1, s2, s, c);
            out.push(key, (c1 * &c2.conj()).mul_phase(&lattice));
        }
    }
    out
}

/// Numeric value of [`overlap`] at `θ`.
pub fn overlap_integral<T: Real>(
    f: &RealFunction,
    g: &RealFunction,
    s: &ThetaLaurent,
    c: &ThetaLaurent,
    theta: T,
) -> Result<Complex<T>> {
    overlap(f, g, s, c).eval(theta)
}
