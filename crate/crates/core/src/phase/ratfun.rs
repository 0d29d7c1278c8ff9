use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exponent::PhaseExponent;
use super::laurent::ThetaLaurent;
use crate::error::{Error, Result};

/// Dense polynomial in `θ` with rational coefficients, lowest degree first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn theta() -> Self {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, q: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = &rem[rem.len() - 1] / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &f * c;
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}*t^{k}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

/// `num / den` in a formal `θ`, gcd-reduced with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThetaRationalFunction {
    num: Poly,
    den: Poly,
}

impl ThetaRationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g)?;
        let (mut d, _) = den.div_rem(&g)?;
        if let Some(l) = d.leading().cloned() {
            let inv = l.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(ThetaRationalFunction { num: n, den: d })
    }

    pub fn from_poly(num: Poly) -> Self {
        ThetaRationalFunction { num, den: Poly::constant(BigRational::one()) }
    }

    pub fn constant(c: BigRational) -> Self {
        ThetaRationalFunction::from_poly(Poly::constant(c))
    }

    pub fn theta() -> Self {
        ThetaRationalFunction::from_poly(Poly::theta())
    }

    pub fn from_laurent(x: &ThetaLaurent) -> Self {
        let low = x.terms().map(|(k, _)| k).min().unwrap_or(0).min(0);
        let shifted = x.shift(-low);
        let deg = shifted.terms().map(|(k, _)| k).max().unwrap_or(0);
        let num = Poly::new((0..=deg).map(|k| shifted.coeff(k)).collect());
        let mut den = vec![BigRational::zero(); (-low) as usize + 1];
        den[(-low) as usize] = BigRational::one();
        ThetaRationalFunction::new(num, Poly::new(den)).expect("monomial denominator")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        ThetaRationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.degree() != Some(0) {
            return None;
        }
        match self.num.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(&self.num.coeffs()[0] / &self.den.coeffs()[0]),
            _ => None,
        }
    }

    /// Whether `self - (a + bθ + c/θ)` is an integer constant.
    pub fn congruent_mod_one(&self, target: &PhaseExponent) -> bool {
        let t = ThetaRationalFunction::from_laurent(&ThetaLaurent::from(target));
        match (self - &t).as_constant() {
            Some(c) => c.is_integer(),
            None => false,
        }
    }
}

impl fmt::Debug for ThetaRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl Add for &ThetaRationalFunction {
    type Output = ThetaRationalFunction;
    fn add(self, rhs: &ThetaRationalFunction) -> ThetaRationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ThetaRationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Neg for &ThetaRationalFunction {
    type Output = ThetaRationalFunction;
    fn neg(self) -> ThetaRationalFunction {
        ThetaRationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &ThetaRationalFunction {
    type Output = ThetaRationalFunction;
    fn sub(self, rhs: &ThetaRationalFunction) -> ThetaRationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &ThetaRationalFunction {
    type Output = ThetaRationalFunction;
    fn mul(self, rhs: &ThetaRationalFunction) -> ThetaRationalFunction {
        ThetaRationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Div for &ThetaRationalFunction {
    type Output = Result<ThetaRationalFunction>;
    fn div(self, rhs: &ThetaRationalFunction) -> Result<ThetaRationalFunction> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        ThetaRationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}
