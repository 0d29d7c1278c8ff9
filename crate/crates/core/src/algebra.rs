//! Twisted group algebras over `Γ = Z[1/p]²`: the multipliers `Ψ_α`, `η` on
//! `D_θ` and `η̄` on its annihilator, finitely supported elements with twisted
//! convolution and involution, the generators `U_j`, `V_j`, and the Morita
//! fraction identity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{pow_p, PAdicRational};
use crate::phase::{mod_one, PhaseExponent, PhasePolynomial, ThetaRationalFunction};
use crate::scalar::Real;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaElement {
    pub r1: PAdicRational,
    pub r2: PAdicRational,
}

impl GammaElement {
    pub fn new(r1: PAdicRational, r2: PAdicRational) -> Self {
        GammaElement { r1, r2 }
    }

    pub fn zero(p: u32) -> Self {
        GammaElement::new(PAdicRational::zero(p), PAdicRational::zero(p))
    }

    pub fn p(&self) -> u32 {
        self.r1.p()
    }

    pub fn is_zero(&self) -> bool {
        self.r1.is_zero() && self.r2.is_zero()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        GammaElement::new(self.r1.mul_int(k), self.r2.mul_int(k))
    }
}

impl fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r1, self.r2)
    }
}

impl Add for &GammaElement {
    type Output = GammaElement;
    fn add(self, rhs: &GammaElement) -> GammaElement {
        GammaElement::new(&self.r1 + &rhs.r1, &self.r2 + &rhs.r2)
    }
}

impl Neg for &GammaElement {
    type Output = GammaElement;
    fn neg(self) -> GammaElement {
        GammaElement::new(-&self.r1, -&self.r2)
    }
}

/// An element of `Ξ_p`: a sequence `α_n` with `p·α_{n+1} ≡ α_n (mod 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlphaSequence {
    /// `α_n = (θ+1)/p^n`.
    ThetaFamily { p: u32 },
    /// `α_{n+1} = (α_n + m_n)/p` with digits `m_n` read cyclically.
    Explicit { p: u32, alpha0: BigRational, digits: Vec<u32> },
}

impl AlphaSequence {
    pub fn theta_family(p: u32) -> Self {
        AlphaSequence::ThetaFamily { p }
    }

    pub fn explicit(p: u32, alpha0: BigRational, digits: Vec<u32>) -> Result<Self> {
        if digits.is_empty() || digits.iter().any(|&d| d >= p) {
            return Err(Error::Config(format!("digits must be nonempty and below {p}")));
        }
        Ok(AlphaSequence::Explicit { p, alpha0: mod_one(&alpha0), digits })
    }

    pub fn p(&self) -> u32 {
        match self {
            AlphaSequence::ThetaFamily { p } | AlphaSequence::Explicit { p, .. } => *p,
        }
    }

    pub fn term(&self, n: u32) -> PhaseExponent {
        match self {
            AlphaSequence::ThetaFamily { p } => {
                PhaseExponent::theta_plus_one(&BigRational::new(BigInt::one(), pow_p(*p, n)))
            }
            AlphaSequence::Explicit { p, alpha0, digits } => {
                let bp = BigRational::from_integer(BigInt::from(*p));
                let mut a = alpha0.clone();
                for k in 0..n as usize {
                    let m = BigRational::from_integer(BigInt::from(digits[k % digits.len()]));
                    a = (a + m) / &bp;
                }
                PhaseExponent::rational(a)
            }
        }
    }

    /// Checks `p·α_{n+1} ≡ α_n` for `n < upto`.
    pub fn validate(&self, upto: u32) -> bool {
        let p = BigInt::from(self.p());
        (0..upto).all(|n| self.term(n + 1).scale_int(&p) == self.term(n))
    }
}

/// `Ψ_α(γ1, γ2) = e^{2πi α_{k1+k4} j1 j4}` for `γ1.r1 = j1/p^{k1}`, `γ2.r2 = j4/p^{k4}`.
pub fn psi_alpha(alpha: &AlphaSequence, g1: &GammaElement, g2: &GammaElement) -> PhaseExponent {
    let x = &g1.r1;
    let y = &g2.r2;
    let n = x.denom_exp() + y.denom_exp();
    alpha.term(n).scale_int(&(x.numerator() * y.numerator()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    D,
    DPerp,
}

/// A point of `D_θ` or of its annihilator, in `Z[1/p]²` coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DPoint {
    pub side: Side,
    pub r1: PAdicRational,
    pub r2: PAdicRational,
}

impl DPoint {
    pub fn d(r1: PAdicRational, r2: PAdicRational) -> Self {
        DPoint { side: Side::D, r1, r2 }
    }

    pub fn perp(r1: PAdicRational, r2: PAdicRational) -> Self {
        DPoint { side: Side::DPerp, r1, r2 }
    }

    pub fn gamma(&self) -> GammaElement {
        GammaElement::new(self.r1.clone(), self.r2.clone())
    }

    pub fn add(&self, other: &DPoint) -> Result<DPoint> {
        if self.side != other.side {
            return Err(Error::MultiplierMismatch);
        }
        Ok(DPoint { side: self.side, r1: &self.r1 + &other.r1, r2: &self.r2 + &other.r2 })
    }
}

impl fmt::Debug for DPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({}, {})", self.side, self.r1, self.r2)
    }
}

/// `η` on `D_θ` (exponent `(θ+1) x.r1 y.r2`) or `η̄` on `D_θ^⊥`
/// (exponent `-(1/θ+1) x.r1 y.r2`).
pub fn eta(x: &DPoint, y: &DPoint) -> Result<PhaseExponent> {
    if x.side != y.side {
        return Err(Error::MultiplierMismatch);
    }
    let m = match x.side {
        Side::D => Multiplier::EtaD,
        Side::DPerp => Multiplier::EtaBarPerp,
    };
    Ok(m.eval(&x.gamma(), &y.gamma()))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Multiplier {
    Psi(AlphaSequence),
    EtaD,
    EtaBarPerp,
}

impl Multiplier {
    pub fn eval(&self, x: &GammaElement, y: &GammaElement) -> PhaseExponent {
        match self {
            Multiplier::Psi(alpha) => psi_alpha(alpha, x, y),
            Multiplier::EtaD => {
                let r = &x.r1 * &y.r2;
                PhaseExponent::new(r.frac_p().to_rational(), r.to_rational(), BigRational::zero())
            }
            Multiplier::EtaBarPerp => {
                let r = -(&x.r1 * &y.r2);
                PhaseExponent::new(r.frac_p().to_rational(), BigRational::zero(), r.to_rational())
            }
        }
    }
}

/// `σ(x,y)σ(x+y,z) = σ(y,z)σ(x,y+z)` as an exact exponent identity.
pub fn cocycle_check(m: &Multiplier, x: &GammaElement, y: &GammaElement, z: &GammaElement) -> bool {
    let lhs = &m.eval(x, y) + &m.eval(&(x + y), z);
    let rhs = &m.eval(y, z) + &m.eval(x, &(y + z));
    lhs == rhs
}

/// Finitely supported element of `ℓ¹(Γ, σ)`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    p: u32,
    multiplier: Multiplier,
    coeffs: BTreeMap<GammaElement, PhasePolynomial>,
}

impl AlgebraElement {
    pub fn zero(p: u32, multiplier: Multiplier) -> Self {
        AlgebraElement { p, multiplier, coeffs: BTreeMap::new() }
    }

    pub fn delta(multiplier: Multiplier, g: GammaElement) -> Self {
        let p = g.p();
        AlgebraElement::from_terms(multiplier, p, [(g, PhasePolynomial::one(p))])
    }

    pub fn unit(p: u32, multiplier: Multiplier) -> Self {
        AlgebraElement::delta(multiplier, GammaElement::zero(p))
    }

    pub fn from_terms(
        multiplier: Multiplier,
        p: u32,
        terms: impl IntoIterator<Item = (GammaElement, PhasePolynomial)>,
    ) -> Self {
        let mut coeffs: BTreeMap<GammaElement, PhasePolynomial> = BTreeMap::new();
        for (g, c) in terms {
            add_into(&mut coeffs, g, c);
        }
        AlgebraElement { p, multiplier, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn multiplier(&self) -> &Multiplier {
        &self.multiplier
    }

    pub fn coeffs(&self) -> &BTreeMap<GammaElement, PhasePolynomial> {
        &self.coeffs
    }

    pub fn coeff(&self, g: &GammaElement) -> PhasePolynomial {
        self.coeffs.get(g).cloned().unwrap_or_else(|| PhasePolynomial::zero(self.p))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.multiplier != other.multiplier {
            return Err(Error::MultiplierMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        for (g, c) in &other.coeffs {
            add_into(&mut coeffs, g.clone(), c.clone());
        }
        Ok(AlgebraElement { p: self.p, multiplier: self.multiplier.clone(), coeffs })
    }

    pub fn scale(&self, c: &PhasePolynomial) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.multiplier.clone(),
            self.p,
            self.coeffs.iter().map(|(g, k)| (g.clone(), k * c)),
        )
    }

    pub fn convolve(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.multiplier != other.multiplier {
            return Err(Error::MultiplierMismatch);
        }
        let mut coeffs: BTreeMap<GammaElement, PhasePolynomial> = BTreeMap::new();
        for (g1, c1) in &self.coeffs {
            for (g2, c2) in &other.coeffs {
                let w = self.multiplier.eval(g1, g2);
                add_into(&mut coeffs, g1 + g2, (c1 * c2).mul_phase(&w));
            }
        }
        Ok(AlgebraElement { p: self.p, multiplier: self.multiplier.clone(), coeffs })
    }

    /// `f*(γ) = conj(σ(γ,−γ) f(−γ))`.
    pub fn involution(&self) -> AlgebraElement {
        let terms = self.coeffs.iter().map(|(g, c)| {
            let gamma = -g;
            let w = self.multiplier.eval(&gamma, g);
            (gamma, c.mul_phase(&w).conj())
        });
        AlgebraElement::from_terms(self.multiplier.clone(), self.p, terms)
    }

    /// `self^n` for `n ≥ 0`; negative powers are taken as powers of `self*`,
    /// which is the inverse for unitary deltas.
    pub fn power(&self, n: i64) -> Result<AlgebraElement> {
        let base = if n < 0 { self.involution() } else { self.clone() };
        let mut acc = AlgebraElement::unit(self.p, self.multiplier.clone());
        for _ in 0..n.unsigned_abs() {
            acc = acc.convolve(&base)?;
        }
        Ok(acc)
    }

    pub fn l1_norm<T: Real>(&self, theta: T) -> Result<T> {
        let mut total = T::zero();
        for c in self.coeffs.values() {
            total = total + c.eval(theta)?.norm();
        }
        Ok(total)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

fn add_into(map: &mut BTreeMap<GammaElement, PhasePolynomial>, g: GammaElement, c: PhasePolynomial) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&g) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                map.remove(&g);
            }
        }
        None => {
            map.insert(g, c);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    U,
    V,
}

/// The point `(1/p^j, 0)` for `U` or `(0, 1/p^j)` for `V`.
pub fn generator_point(p: u32, j: u32, which: Generator) -> GammaElement {
    let step = PAdicRational::new(p, 1, j);
    let zero = PAdicRational::zero(p);
    match which {
        Generator::U => GammaElement::new(step, zero),
        Generator::V => GammaElement::new(zero, step),
    }
}

/// `U_{α,j}` or `V_{α,j}` as a delta in the `η`-algebra on `D_θ`.
pub fn generator_delta(p: u32, j: u32, which: Generator) -> AlgebraElement {
    AlgebraElement::delta(Multiplier::EtaD, generator_point(p, j, which))
}

/// `β/(p^{2j}β + 1)` for `β = -(θ+1)/(p^{2j}θ) + perturbation`.
pub fn morita_fraction(p: u32, j: u32, perturbation: &BigRational) -> ThetaRationalFunction {
    let q = BigRational::from_integer(pow_p(p, 2 * j));
    let theta = ThetaRationalFunction::theta();
    let one = ThetaRationalFunction::constant(BigRational::one());
    let denom = &ThetaRationalFunction::constant(q.clone()) * &theta;
    let beta = &(&(-&(&theta + &one)) / &denom).expect("θ is nonzero")
        + &ThetaRationalFunction::constant(perturbation.clone());
    let lower = &(&ThetaRationalFunction::constant(q) * &beta) + &one;
    (&beta / &lower).expect("p^{2j}β + 1 = -1/θ is nonzero")
}

/// Whether `β_{2j}/(p^{2j}β_{2j}+1) ≡ (θ+1)/p^{2j} (mod 1)` in formal-`θ` arithmetic.
pub fn morita_fraction_check(p: u32, j: u32) -> bool {
    morita_fraction_check_perturbed(p, j, &BigRational::zero())
}

pub fn morita_fraction_check_perturbed(p: u32, j: u32, perturbation: &BigRational) -> bool {
    let f = morita_fraction(p, j, perturbation);
    let target = PhaseExponent::theta_plus_one(&BigRational::new(BigInt::one(), pow_p(p, 2 * j)));
    f.congruent_mod_one(&target)
}
