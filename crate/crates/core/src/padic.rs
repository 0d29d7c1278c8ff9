//! Exact arithmetic on `Z[1/p]`, p-adic valuation and fractional part, and
//! p-adic balls `c + p^j Z_p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(n: u64) -> Result<u32> {
    if is_prime(n) && n <= u32::MAX as u64 {
        Ok(n as u32)
    } else {
        Err(Error::InvalidPrime(n))
    }
}

pub fn pow_p(p: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `p^e` for any integer `e`, as a rational.
pub fn pow_p_rational(p: u32, e: i64) -> BigRational {
    let m = pow_p(p, e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, j: i64) -> bool {
        match self {
            Valuation::Finite(n) => n >= j,
            Valuation::Infinite => true,
        }
    }
}

/// An element `num / p^exp` of `Z[1/p]`, kept with `p ∤ num` whenever `exp > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PAdicRational {
    num: BigInt,
    exp: u32,
    p: u32,
}

impl PAdicRational {
    pub fn new(p: u32, num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return PAdicRational { num, exp: 0, p };
        }
        let bp = BigInt::from(p);
        while exp > 0 {
            let (q, r) = num.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            num = q;
            exp -= 1;
        }
        PAdicRational { num, exp, p }
    }

    pub fn zero(p: u32) -> Self {
        PAdicRational { num: BigInt::zero(), exp: 0, p }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        PAdicRational::new(p, n, 0)
    }

    /// `num / p^exp` where `exp` may be negative.
    pub fn from_parts(p: u32, num: impl Into<BigInt>, exp: i64) -> Self {
        if exp >= 0 {
            PAdicRational::new(p, num, exp as u32)
        } else {
            PAdicRational::new(p, num.into() * pow_p(p, (-exp) as u32), 0)
        }
    }

    pub fn from_rational(p: u32, r: &BigRational) -> Result<Self> {
        let mut d = r.denom().clone();
        let bp = BigInt::from(p);
        let mut exp = 0u32;
        while !d.is_one() {
            let (q, rem) = d.div_rem(&bp);
            if !rem.is_zero() {
                return Err(Error::NotPPower(r.to_string()));
            }
            d = q;
            exp += 1;
        }
        Ok(PAdicRational::new(p, r.numer().clone(), exp))
    }

    /// Parses `"n"` or `"n/d"` with `d` a power of `p`.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let r: BigRational = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction {s:?}")))?;
        PAdicRational::from_rational(p, &r)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denom_exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), pow_p(self.p, self.exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    fn same_p(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed primes {} and {}", self.p, other.p);
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        PAdicRational::new(self.p, &self.num * k.into(), self.exp)
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        PAdicRational::from_parts(self.p, self.num.clone(), self.exp as i64 - k)
    }

    pub fn vp(&self) -> Valuation {
        if self.num.is_zero() {
            return Valuation::Infinite;
        }
        let bp = BigInt::from(self.p);
        let mut n = self.num.clone();
        let mut v = 0i64;
        loop {
            let (q, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            n = q;
            v += 1;
        }
        Valuation::Finite(v - self.exp as i64)
    }

    /// The p-adic fractional part `{r}_p`, in `[0, 1)`.
    pub fn frac_p(&self) -> Self {
        let m = pow_p(self.p, self.exp);
        PAdicRational::new(self.p, self.num.mod_floor(&m), self.exp)
    }

    /// Reduction modulo 1 into `[0, 1)`; agrees with `frac_p` on `Z[1/p]`.
    pub fn fract(&self) -> BigRational {
        let r = self.to_rational();
        &r - r.floor()
    }
}

impl fmt::Display for PAdicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, pow_p(self.p, self.exp))
        }
    }
}

impl fmt::Debug for PAdicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for PAdicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exp
            .cmp(&other.exp)
            .then_with(|| self.num.cmp(&other.num))
            .then_with(|| self.p.cmp(&other.p))
    }
}

impl PartialOrd for PAdicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &PAdicRational {
    type Output = PAdicRational;
    fn add(self, rhs: &PAdicRational) -> PAdicRational {
        self.same_p(rhs);
        let e = self.exp.max(rhs.exp);
        let a = &self.num * pow_p(self.p, e - self.exp);
        let b = &rhs.num * pow_p(self.p, e - rhs.exp);
        PAdicRational::new(self.p, a + b, e)
    }
}

impl Neg for &PAdicRational {
    type Output = PAdicRational;
    fn neg(self) -> PAdicRational {
        PAdicRational { num: -&self.num, exp: self.exp, p: self.p }
    }
}

impl Sub for &PAdicRational {
    type Output = PAdicRational;
    fn sub(self, rhs: &PAdicRational) -> PAdicRational {
        self + &(-rhs)
    }
}

impl Mul for &PAdicRational {
    type Output = PAdicRational;
    fn mul(self, rhs: &PAdicRational) -> PAdicRational {
        self.same_p(rhs);
        PAdicRational::new(self.p, &self.num * &rhs.num, self.exp + rhs.exp)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PAdicRational {
            type Output = PAdicRational;
            fn $m(self, rhs: PAdicRational) -> PAdicRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PAdicRational> for PAdicRational {
            type Output = PAdicRational;
            fn $m(self, rhs: &PAdicRational) -> PAdicRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PAdicRational {
    type Output = PAdicRational;
    fn neg(self) -> PAdicRational {
        -&self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallRelation {
    Equal,
    Disjoint,
    FirstInsideSecond,
    SecondInsideFirst,
}

/// The ball `center + p^scale Z_p` with canonical center.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ball {
    scale: i64,
    center: PAdicRational,
}

impl Ball {
    pub fn new(center: PAdicRational, scale: i64) -> Self {
        let center = center.shift(-scale).frac_p().shift(scale);
        Ball { scale, center }
    }

    pub fn unit(p: u32) -> Self {
        Ball { scale: 0, center: PAdicRational::zero(p) }
    }

    pub fn center(&self) -> &PAdicRational {
        &self.center
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn p(&self) -> u32 {
        self.center.p
    }

    pub fn measure(&self) -> BigRational {
        pow_p_rational(self.p(), -self.scale)
    }

    pub fn contains(&self, r: &PAdicRational) -> bool {
        (r - &self.center).vp().at_least(self.scale)
    }

    pub fn relation(&self, other: &Ball) -> BallRelation {
        match self.scale.cmp(&other.scale) {
            Ordering::Equal if self.center == other.center => BallRelation::Equal,
            Ordering::Equal => BallRelation::Disjoint,
            Ordering::Greater if other.contains(&self.center) => BallRelation::FirstInsideSecond,
            Ordering::Less if self.contains(&other.center) => BallRelation::SecondInsideFirst,
            _ => BallRelation::Disjoint,
        }
    }

    pub fn intersect(&self, other: &Ball) -> Option<Ball> {
        match self.relation(other) {
            BallRelation::Disjoint => None,
            BallRelation::SecondInsideFirst => Some(other.clone()),
            _ => Some(self.clone()),
        }
    }

    /// The `p^{j'-j}` balls of scale `j'` partitioning `self`, ordered by center.
    pub fn refine(&self, finer: i64) -> Result<Vec<Ball>> {
        if finer < self.scale {
            return Err(Error::InvalidRefinement { from: self.scale, to: finer });
        }
        let p = self.p();
        let count = pow_p(p, (finer - self.scale) as u32);
        let step = PAdicRational::from_int(p, 1).shift(self.scale);
        let mut out = Vec::new();
        let mut k = BigInt::zero();
        while k < count {
            out.push(Ball::new(&self.center + &step.mul_int(k.clone()), finer));
            k += 1;
        }
        out.sort();
        Ok(out)
    }

    pub fn parent(&self) -> Ball {
        Ball::new(self.center.clone(), self.scale - 1)
    }

    /// The set `self + x`.
    pub fn translate(&self, x: &PAdicRational) -> Ball {
        Ball::new(&self.center + x, self.scale)
    }

    /// The image under `q ↦ p q`.
    pub fn dilate(&self) -> Ball {
        Ball::new(self.center.shift(1), self.scale + 1)
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ball({}, {})", self.center, self.scale)
    }
}

/// `∫_B e^{2πi {q x}_p} dq`, as `magnitude · e^{2πi exponent}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharIntegral {
    pub magnitude: BigRational,
    pub exponent: PAdicRational,
}

impl CharIntegral {
    pub fn is_zero(&self) -> bool {
        self.magnitude.is_zero()
    }
}

pub fn char_integral(b: &Ball, x: &PAdicRational) -> CharIntegral {
    if x.vp().at_least(-b.scale()) {
        CharIntegral {
            magnitude: b.measure(),
            exponent: (b.center() * x).frac_p(),
        }
    } else {
        CharIntegral {
            magnitude: BigRational::zero(),
            exponent: PAdicRational::zero(b.p()),
        }
    }
}
