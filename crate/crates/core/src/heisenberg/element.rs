use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

use crate::algebra::{AlgebraElement, DPoint, Multiplier, Side};
use crate::error::{Error, Result};
use crate::functions::balls::normalize;
use crate::functions::{char_refine, BallValue, PhaseScalable, RealFunction};
use crate::padic::{Ball, PAdicRational};
use crate::phase::{PhaseExponent, PhasePolynomial, ThetaLaurent};
use crate::scalar::Real;

impl BallValue for RealFunction {
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl PhaseScalable for RealFunction {
    fn times_phase(&self, e: &PhaseExponent) -> Self {
        self.mul_phase(e)
    }
}

/// A point `((x1, s1), (x2, s2))` of `(Q_p × R) × (Q_p × R)^` with `x_i ∈ Z[1/p]`
/// and `s_i` Laurent polynomials in `θ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisPoint {
    pub x1: PAdicRational,
    pub s1: ThetaLaurent,
    pub x2: PAdicRational,
    pub s2: ThetaLaurent,
}

impl HeisPoint {
    /// `ι_θ(r1, r2) = ((r1, θr1), (r2, r2))` on `D_θ`, and
    /// `((u1, -u1), (u2, -u2/θ))` on its annihilator.
    pub fn embed(d: &DPoint) -> HeisPoint {
        let r1 = d.r1.to_rational();
        let r2 = d.r2.to_rational();
        match d.side {
            Side::D => HeisPoint {
                x1: d.r1.clone(),
                s1: ThetaLaurent::monomial(r1, 1),
                x2: d.r2.clone(),
                s2: ThetaLaurent::constant(r2),
            },
            Side::DPerp => HeisPoint {
                x1: d.r1.clone(),
                s1: ThetaLaurent::constant(-r1),
                x2: d.r2.clone(),
                s2: ThetaLaurent::monomial(-r2, -1),
            },
        }
    }

    pub fn zero(p: u32) -> HeisPoint {
        HeisPoint {
            x1: PAdicRational::zero(p),
            s1: ThetaLaurent::zero(),
            x2: PAdicRational::zero(p),
            s2: ThetaLaurent::zero(),
        }
    }

    pub fn add(&self, o: &HeisPoint) -> HeisPoint {
        HeisPoint {
            x1: &self.x1 + &o.x1,
            s1: &self.s1 + &o.s1,
            x2: &self.x2 + &o.x2,
            s2: &self.s2 + &o.s2,
        }
    }

    pub fn neg(&self) -> HeisPoint {
        HeisPoint { x1: -&self.x1, s1: -&self.s1, x2: -&self.x2, s2: -&self.s2 }
    }

    /// Exponent of `η(y, y') = e^{2πi s1 s2'} e^{2πi {x1 x2'}_p}`.
    pub fn eta(&self, o: &HeisPoint) -> ThetaLaurent {
        let padic = (&self.x1 * &o.x2).frac_p().to_rational();
        &(&self.s1 * &o.s2) + &ThetaLaurent::constant(padic)
    }

    /// Exponent of `ρ(y, y') = η(y, y') conj(η(y', y))`.
    pub fn rho(&self, o: &HeisPoint) -> ThetaLaurent {
        &self.eta(o) - &o.eta(self)
    }
}

impl fmt::Debug for HeisPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.x1, self.s1, self.x2, self.s2)
    }
}

/// A finite sum of tensors `χ_B ⊗ f` on `Q_p × R`, kept over disjoint
/// canonical balls with sibling families of equal functions merged.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    p: u32,
    terms: BTreeMap<Ball, RealFunction>,
}

impl ModuleElement {
    pub fn zero(p: u32) -> Self {
        ModuleElement { p, terms: BTreeMap::new() }
    }

    pub fn elementary(b: Ball, f: RealFunction) -> Self {
        let p = b.p();
        ModuleElement::from_terms(p, vec![(b, f)])
    }

    pub fn from_terms(p: u32, terms: Vec<(Ball, RealFunction)>) -> Self {
        ModuleElement { p, terms: normalize(terms) }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Ball, RealFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        let all = self.terms.iter().chain(other.terms.iter());
        ModuleElement::from_terms(self.p, all.map(|(b, f)| (b.clone(), f.clone())).collect())
    }

    pub fn scale(&self, c: &PhasePolynomial) -> ModuleElement {
        let terms = self.terms.iter().map(|(b, f)| (b.clone(), f.scale(c))).collect();
        ModuleElement::from_terms(self.p, terms)
    }

    /// Multiplies by `e^{2πi x(θ)}`.
    pub fn mul_phase_laurent(&self, x: &ThetaLaurent) -> ModuleElement {
        let terms = self
            .terms
            .iter()
            .map(|(b, f)| (b.clone(), f.mul_phase_laurent(x)))
            .collect();
        ModuleElement::from_terms(self.p, terms)
    }

    /// `π(y)F(q,t) = e^{2πi(t s2 + {q x2}_p)} F(q + x1, t + s1)`.
    pub fn heis_op(&self, y: &HeisPoint) -> ModuleElement {
        let shift = -&y.x1;
        let moved = self
            .terms
            .iter()
            .map(|(b, f)| (b.translate(&shift), f.translate(&y.s1).modulate(&y.s2)));
        ModuleElement::from_terms(self.p, char_refine(moved, &y.x2))
    }

    pub fn eval<T: Real>(&self, q: &PAdicRational, t: T, theta: T) -> Result<Complex<T>> {
        match self.terms.iter().find(|(b, _)| b.contains(q)) {
            Some((_, f)) => f.eval(t, theta),
            None => Ok(Complex::new(T::zero(), T::zero())),
        }
    }

    /// Largest scale among the support balls.
    pub fn finest_scale(&self) -> Option<i64> {
        self.terms.keys().map(|b| b.scale()).max()
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `δ_d · F = π(ι_θ d) F` for `d ∈ D_θ`.
pub fn act_left(d: &DPoint, f: &ModuleElement) -> Result<ModuleElement> {
    if d.side != Side::D {
        return Err(Error::MultiplierMismatch);
    }
    Ok(f.heis_op(&HeisPoint::embed(d)))
}

/// `F · δ_e = π(e)^{-1} F = conj(η(e,-e)) π(-e) F` for `e` in the annihilator.
///
/// With this convention `(F·δ_{e1})·δ_{e2} = η̄(e1,e2) F·δ_{e1+e2}`.
pub fn act_right(f: &ModuleElement, e: &DPoint) -> Result<ModuleElement> {
    if e.side != Side::DPerp {
        return Err(Error::MultiplierMismatch);
    }
    let y = HeisPoint::embed(e);
    let w = y.eta(&y.neg());
    Ok(f.heis_op(&y.neg()).mul_phase_laurent(&-&w))
}

/// `a · F = Σ_d a(d) π(ι_θ d) F`.
pub fn act_left_algebra(a: &AlgebraElement, f: &ModuleElement) -> Result<ModuleElement> {
    if *a.multiplier() != Multiplier::EtaD {
        return Err(Error::MultiplierMismatch);
    }
    let mut acc = ModuleElement::zero(f.p());
    for (g, c) in a.coeffs() {
        let d = DPoint::d(g.r1.clone(), g.r2.clone());
        acc = acc.add(&act_left(&d, f)?.scale(c));
    }
    Ok(acc)
}

/// `F · b = Σ_e b(e) F·δ_e`.
pub fn act_right_algebra(f: &ModuleElement, b: &AlgebraElement) -> Result<ModuleElement> {
    if *b.multiplier() != Multiplier::EtaBarPerp {
        return Err(Error::MultiplierMismatch);
    }
    let mut acc = ModuleElement::zero(f.p());
    for (g, c) in b.coeffs() {
        let e = DPoint::perp(g.r1.clone(), g.r2.clone());
        acc = acc.add(&act_right(f, &e)?.scale(c));
    }
    Ok(acc)
}
