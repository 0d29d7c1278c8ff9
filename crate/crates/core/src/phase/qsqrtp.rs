use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{from_rational, Real};

/// `u + v√p` with rational `u`, `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSqrtP {
    u: BigRational,
    v: BigRational,
    p: u32,
}

impl QSqrtP {
    pub fn new(p: u32, u: BigRational, v: BigRational) -> Self {
        QSqrtP { u, v, p }
    }

    pub fn rational(p: u32, u: BigRational) -> Self {
        QSqrtP { u, v: BigRational::zero(), p }
    }

    pub fn int(p: u32, n: i64) -> Self {
        QSqrtP::rational(p, BigRational::from_integer(n.into()))
    }

    pub fn zero(p: u32) -> Self {
        QSqrtP::int(p, 0)
    }

    pub fn one(p: u32) -> Self {
        QSqrtP::int(p, 1)
    }

    /// `(√p)^k` for any integer `k`.
    pub fn sqrt_p_pow(p: u32, k: i64) -> Self {
        let half = k.div_euclid(2);
        let r = crate::padic::pow_p_rational(p, half);
        if k.rem_euclid(2) == 0 {
            QSqrtP::rational(p, r)
        } else {
            QSqrtP::new(p, BigRational::zero(), r)
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    pub fn v(&self) -> &BigRational {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    /// `u - v√p`.
    pub fn galois_conj(&self) -> Self {
        QSqrtP::new(self.p, self.u.clone(), -&self.v)
    }

    /// `u² - p v²`.
    pub fn norm(&self) -> BigRational {
        let p = BigRational::from_integer(BigInt::from(self.p));
        &self.u * &self.u - p * &self.v * &self.v
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.galois_conj();
        Ok(QSqrtP::new(self.p, &c.u / &n, &c.v / &n))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QSqrtP::new(self.p, &self.u * q, &self.v * q)
    }

    pub fn eval<T: Real>(&self) -> T {
        let s = T::from_u32(self.p).unwrap_or_else(T::nan).sqrt();
        from_rational::<T>(&self.u) + from_rational::<T>(&self.v) * s
    }
}

impl fmt::Display for QSqrtP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else if self.u.is_zero() {
            write!(f, "{}*sqrt({})", self.v, self.p)
        } else {
            write!(f, "{}+{}*sqrt({})", self.u, self.v, self.p)
        }
    }
}

impl fmt::Debug for QSqrtP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &QSqrtP {
    type Output = QSqrtP;
    fn add(self, rhs: &QSqrtP) -> QSqrtP {
        QSqrtP::new(self.p, &self.u + &rhs.u, &self.v + &rhs.v)
    }
}

impl Sub for &QSqrtP {
    type Output = QSqrtP;
    fn sub(self, rhs: &QSqrtP) -> QSqrtP {
        QSqrtP::new(self.p, &self.u - &rhs.u, &self.v - &rhs.v)
    }
}

impl Neg for &QSqrtP {
    type Output = QSqrtP;
    fn neg(self) -> QSqrtP {
        QSqrtP::new(self.p, -&self.u, -&self.v)
    }
}

impl Mul for &QSqrtP {
    type Output = QSqrtP;
    fn mul(self, rhs: &QSqrtP) -> QSqrtP {
        let p = BigRational::from_integer(BigInt::from(self.p));
        QSqrtP::new(
            self.p,
            &self.u * &rhs.u + p * &self.v * &rhs.v,
            &self.u * &rhs.v + &self.v * &rhs.u,
        )
    }
}
