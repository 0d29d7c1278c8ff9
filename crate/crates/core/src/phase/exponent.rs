use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{cis_turns, from_rational, Real};

pub(crate) fn mod_one(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// Exponent of the phase `e^{2πi(a + bθ + c/θ)}` with `a` reduced into `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseExponent {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl PhaseExponent {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Self {
        PhaseExponent { a: mod_one(&a), b, c }
    }

    pub fn zero() -> Self {
        PhaseExponent {
            a: BigRational::zero(),
            b: BigRational::zero(),
            c: BigRational::zero(),
        }
    }

    pub fn rational(a: BigRational) -> Self {
        PhaseExponent::new(a, BigRational::zero(), BigRational::zero())
    }

    /// Exponent of `e^{2πi(θ+1)r}`.
    pub fn theta_plus_one(r: &BigRational) -> Self {
        PhaseExponent::new(r.clone(), r.clone(), BigRational::zero())
    }

    /// Exponent of `e^{2πi(1/θ+1)r}`.
    pub fn inv_theta_plus_one(r: &BigRational) -> Self {
        PhaseExponent::new(r.clone(), BigRational::zero(), r.clone())
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        self.scale(&k)
    }

    /// Coefficient-wise scaling of the stored representative.
    pub fn scale(&self, q: &BigRational) -> Self {
        PhaseExponent::new(&self.a * q, &self.b * q, &self.c * q)
    }

    pub fn eval<T: Real>(&self, theta: T) -> Result<Complex<T>> {
        if theta.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let x = from_rational::<T>(&self.a)
            + from_rational::<T>(&self.b) * theta
            + from_rational::<T>(&self.c) / theta;
        Ok(cis_turns(x))
    }

    /// `"a/b;c/d;e/f"`.
    pub fn to_text(&self) -> String {
        let f = |r: &BigRational| format!("{}/{}", r.numer(), r.denom());
        format!("{};{};{}", f(&self.a), f(&self.b), f(&self.c))
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three fractions in {s:?}")));
        }
        let mut vals = Vec::with_capacity(3);
        for part in parts {
            let r: BigRational = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad fraction {part:?}")))?;
            vals.push(r);
        }
        let c = vals.pop().unwrap_or_default();
        let b = vals.pop().unwrap_or_default();
        let a = vals.pop().unwrap_or_default();
        Ok(PhaseExponent::new(a, b, c))
    }
}

impl Default for PhaseExponent {
    fn default() -> Self {
        PhaseExponent::zero()
    }
}

impl fmt::Display for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", self.to_text())
    }
}

impl Add for &PhaseExponent {
    type Output = PhaseExponent;
    fn add(self, rhs: &PhaseExponent) -> PhaseExponent {
        PhaseExponent::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c)
    }
}

impl Add for PhaseExponent {
    type Output = PhaseExponent;
    fn add(self, rhs: PhaseExponent) -> PhaseExponent {
        &self + &rhs
    }
}

impl Neg for &PhaseExponent {
    type Output = PhaseExponent;
    fn neg(self) -> PhaseExponent {
        PhaseExponent::new(-&self.a, -&self.b, -&self.c)
    }
}

impl Neg for PhaseExponent {
    type Output = PhaseExponent;
    fn neg(self) -> PhaseExponent {
        -&self
    }
}

impl Sub for &PhaseExponent {
    type Output = PhaseExponent;
    fn sub(self, rhs: &PhaseExponent) -> PhaseExponent {
        self + &(-rhs)
    }
}

impl Sub for PhaseExponent {
    type Output = PhaseExponent;
    fn sub(self, rhs: PhaseExponent) -> PhaseExponent {
        &self - &rhs
    }
}
