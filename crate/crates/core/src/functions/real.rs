use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::phase::{PhaseExponent, PhasePolynomial, ThetaLaurent};
use crate::scalar::{cis_turns, from_rational, Real};

/// The atom `t ↦ e^{-πa(t-μ)²} e^{2πiωt} e^{2πi ρ}` where `ρ` holds the
/// powers of `θ` outside `{-1, 0, 1}` of accumulated constant phases.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomShape {
    pub width: BigRational,
    pub center: ThetaLaurent,
    pub freq: ThetaLaurent,
    pub residual: ThetaLaurent,
}

impl AtomShape {
    pub fn gaussian(width: BigRational, center: ThetaLaurent, freq: ThetaLaurent) -> Self {
        assert!(width > BigRational::zero(), "atom width must be positive");
        AtomShape { width, center, freq, residual: ThetaLaurent::zero() }
    }

    pub fn unit() -> Self {
        AtomShape::gaussian(BigRational::one(), ThetaLaurent::zero(), ThetaLaurent::zero())
    }

    /// Adds `x` to the constant phase; returns the part on `1, θ, 1/θ`.
    fn absorb_phase(&mut self, x: &ThetaLaurent) -> PhaseExponent {
        let (lattice, rest) = x.split_phase();
        self.residual = &self.residual + &rest;
        lattice
    }

    pub fn eval<T: Real>(&self, t: T, theta: T) -> Complex<T> {
        let a: T = from_rational(&self.width);
        let d = t - self.center.eval(theta);
        let env = (-T::PI() * a * d * d).exp();
        cis_turns(self.freq.eval(theta) * t + self.residual.eval(theta)) * env
    }
}

impl fmt::Debug for AtomShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(a={}, mu={}, w={}", self.width, self.center, self.freq)?;
        if !self.residual.is_zero() {
            write!(f, ", res={}", self.residual)?;
        }
        f.write_str(")")
    }
}

/// A finite combination of Gaussian atoms with exact phase coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealFunction {
    p: u32,
    atoms: BTreeMap<AtomShape, PhasePolynomial>,
}

impl RealFunction {
    pub fn zero(p: u32) -> Self {
        RealFunction { p, atoms: BTreeMap::new() }
    }

    pub fn atom(p: u32, shape: AtomShape) -> Self {
        RealFunction::from_atoms(p, vec![(shape, PhasePolynomial::one(p))])
    }

    /// `e^{-πt²}`.
    pub fn unit_gaussian(p: u32) -> Self {
        RealFunction::atom(p, AtomShape::unit())
    }

    pub fn from_atoms(p: u32, atoms: Vec<(AtomShape, PhasePolynomial)>) -> Self {
        let mut map: BTreeMap<AtomShape, PhasePolynomial> = BTreeMap::new();
        for (s, c) in atoms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&s) {
                Some(old) => {
                    *old = &*old + &c;
                    if old.is_zero() {
                        map.remove(&s);
                    }
                }
                None => {
                    map.insert(s, c);
                }
            }
        }
        RealFunction { p, atoms: map }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn atoms(&self) -> &BTreeMap<AtomShape, PhasePolynomial> {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn add(&self, other: &RealFunction) -> RealFunction {
        let all = self.atoms.iter().chain(other.atoms.iter());
        RealFunction::from_atoms(self.p, all.map(|(s, c)| (s.clone(), c.clone())).collect())
    }

    pub fn scale(&self, c: &PhasePolynomial) -> RealFunction {
        let atoms = self.atoms.iter().map(|(s, k)| (s.clone(), k * c)).collect();
        RealFunction::from_atoms(self.p, atoms)
    }

    pub fn mul_phase(&self, e: &PhaseExponent) -> RealFunction {
        let atoms = self.atoms.iter().map(|(s, k)| (s.clone(), k.mul_phase(e))).collect();
        RealFunction::from_atoms(self.p, atoms)
    }

    /// Multiplies by the constant `e^{2πi x(θ)}`.
    pub fn mul_phase_laurent(&self, x: &ThetaLaurent) -> RealFunction {
        if x.is_zero() {
            return self.clone();
        }
        let atoms = self
            .atoms
            .iter()
            .map(|(shape, c)| {
                let mut out = shape.clone();
                let lattice = out.absorb_phase(x);
                (out, c.mul_phase(&lattice))
            })
            .collect();
        RealFunction::from_atoms(self.p, atoms)
    }

    /// `t ↦ g(t + s)`.
    pub fn translate(&self, s: &ThetaLaurent) -> RealFunction {
        if s.is_zero() {
            return self.clone();
        }
        let atoms = self
            .atoms
            .iter()
            .map(|(shape, c)| {
                let mut out = shape.clone();
                out.center = &shape.center - s;
                let lattice = out.absorb_phase(&(&shape.freq * s));
                (out, c.mul_phase(&lattice))
            })
            .collect();
        RealFunction::from_atoms(self.p, atoms)
    }

    /// `t ↦ e^{2πiwt} g(t)`.
    pub fn modulate(&self, w: &ThetaLaurent) -> RealFunction {
        if w.is_zero() {
            return self.clone();
        }
        let atoms = self
            .atoms
            .iter()
            .map(|(shape, c)| {
                let mut out = shape.clone();
                out.freq = &shape.freq + w;
                (out, c.clone())
            })
            .collect();
        RealFunction::from_atoms(self.p, atoms)
    }

    /// `t ↦ g(d t)` for rational `d > 0`.
    pub fn dilate(&self, d: &BigRational) -> RealFunction {
        assert!(*d > BigRational::zero(), "dilation factor must be positive");
        let atoms = self
            .atoms
            .iter()
            .map(|(shape, c)| {
                let out = AtomShape {
                    width: &shape.width * d * d,
                    center: shape.center.scale(&d.recip()),
                    freq: shape.freq.scale(d),
                    residual: shape.residual.clone(),
                };
                (out, c.clone())
            })
            .collect();
        RealFunction::from_atoms(self.p, atoms)
    }

    /// `t ↦ g(p^k t)`.
    pub fn dilate_p(&self, k: i64) -> RealFunction {
        self.dilate(&crate::padic::pow_p_rational(self.p, k))
    }

    /// `t ↦ e^{2πi w t} g(t/d + s)`: dilation, then shift, then modulation.
    pub fn transform(&self, shift: &ThetaLaurent, modulate: &ThetaLaurent, d: &BigRational) -> RealFunction {
        self.dilate(&d.recip()).translate(shift).modulate(modulate)
    }

    pub fn conj(&self) -> RealFunction {
        let atoms = self
            .atoms
            .iter()
            .map(|(shape, c)| {
                let out = AtomShape {
                    width: shape.width.clone(),
                    center: shape.center.clone(),
                    freq: -&shape.freq,
                    residual: -&shape.residual,
                };
                (out, c.conj())
            })
            .collect();
        RealFunction::from_atoms(self.p, atoms)
    }

    pub fn eval<T: Real>(&self, t: T, theta: T) -> Result<Complex<T>> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (shape, c) in &self.atoms {
            acc = acc + shape.eval(t, theta) * c.eval(theta)?;
        }
        Ok(acc)
    }

    pub fn min_width(&self) -> Option<BigRational> {
        self.atoms.keys().map(|s| s.width.clone()).min()
    }
}

impl fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.atoms.iter()).finish()
    }
}
