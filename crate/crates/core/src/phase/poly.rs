use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::exponent::{mod_one, PhaseExponent};
use super::qsqrtp::QSqrtP;
use crate::error::Result;
use crate::scalar::Real;

/// A finite sum `Σ c_k e^{2πi x_k}` with `Q(√p)` coefficients.
///
/// Normal form merges equal exponents, drops zeros and rewrites the rational
/// parts of the exponents in the basis of `p`-power roots of unity whose top
/// base-`p` digit is below `p - 1`, so that vanishing sums of roots of unity
/// normalize to zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasePolynomial {
    p: u32,
    terms: BTreeMap<PhaseExponent, QSqrtP>,
}

impl PhasePolynomial {
    pub fn zero(p: u32) -> Self {
        PhasePolynomial { p, terms: BTreeMap::new() }
    }

    pub fn one(p: u32) -> Self {
        PhasePolynomial::phase(p, PhaseExponent::zero())
    }

    pub fn phase(p: u32, e: PhaseExponent) -> Self {
        PhasePolynomial::monomial(QSqrtP::one(p), e)
    }

    pub fn scalar(c: QSqrtP) -> Self {
        PhasePolynomial::monomial(c, PhaseExponent::zero())
    }

    pub fn rational(p: u32, q: BigRational) -> Self {
        PhasePolynomial::scalar(QSqrtP::rational(p, q))
    }

    pub fn monomial(c: QSqrtP, e: PhaseExponent) -> Self {
        PhasePolynomial::from_terms(c.p(), vec![(e, c)])
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (PhaseExponent, QSqrtP)>) -> Self {
        let mut map: BTreeMap<PhaseExponent, QSqrtP> = BTreeMap::new();
        for (e, c) in terms {
            accumulate(&mut map, e, &c);
        }
        PhasePolynomial { p, terms: cyclotomic_reduce(p, map) }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PhaseExponent, &QSqrtP)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single exponent, when `self = e^{2πi x}` exactly.
    pub fn as_unit_phase(&self) -> Option<&PhaseExponent> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && c.is_one() => Some(e),
            _ => None,
        }
    }

    pub fn scale(&self, c: &QSqrtP) -> Self {
        PhasePolynomial::from_terms(self.p, self.terms.iter().map(|(e, k)| (e.clone(), k * c)))
    }

    pub fn mul_phase(&self, x: &PhaseExponent) -> Self {
        if x.is_trivial() {
            return self.clone();
        }
        PhasePolynomial::from_terms(self.p, self.terms.iter().map(|(e, k)| (e + x, k.clone())))
    }

    /// Complex conjugate, with `θ` real.
    pub fn conj(&self) -> Self {
        PhasePolynomial::from_terms(self.p, self.terms.iter().map(|(e, k)| (-e, k.clone())))
    }

    pub fn eval<T: Real>(&self, theta: T) -> Result<Complex<T>> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (e, c) in &self.terms {
            acc = acc + e.eval(theta)? * c.eval::<T>();
        }
        Ok(acc)
    }

    /// Sum of the absolute values of the coefficients.
    pub fn abs_coeff_sum<T: Real>(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc + c.eval::<T>().abs())
    }
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c})e[{e}]"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn accumulate(map: &mut BTreeMap<PhaseExponent, QSqrtP>, e: PhaseExponent, c: &QSqrtP) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&e) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                map.remove(&e);
            }
        }
        None => {
            map.insert(e, c.clone());
        }
    }
}

/// Splits `a ∈ [0,1)` as `x/p^n + rest (mod 1)` with `rest` of denominator prime to `p`.
fn split_p_part(p: u32, a: &BigRational) -> (u32, BigInt, BigRational) {
    let bp = BigInt::from(p);
    let mut m = a.denom().clone();
    let mut n = 0u32;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            break;
        }
        m = q;
        n += 1;
    }
    if n == 0 {
        return (0, BigInt::zero(), a.clone());
    }
    let pn = crate::padic::pow_p(p, n);
    let minv = mod_inverse(&m.mod_floor(&pn), &pn);
    let x = (a.numer() * minv).mod_floor(&pn);
    let rest = mod_one(&(a - BigRational::new(x.clone(), pn)));
    (n, x, rest)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn cyclotomic_reduce(
    p: u32,
    map: BTreeMap<PhaseExponent, QSqrtP>,
) -> BTreeMap<PhaseExponent, QSqrtP> {
    type GroupKey = (BigRational, BigRational, BigRational);
    let mut groups: BTreeMap<GroupKey, Vec<(u32, BigInt, QSqrtP)>> = BTreeMap::new();
    let mut needs = false;
    for (e, c) in &map {
        let (n, x, rest) = split_p_part(p, e.a());
        if n > 0 {
            needs = true;
        }
        groups
            .entry((e.b().clone(), e.c().clone(), rest))
            .or_default()
            .push((n, x, c.clone()));
    }
    if !needs {
        return map;
    }
    let mut out = BTreeMap::new();
    for ((b, c, rest), items) in groups {
        let top = items.iter().map(|(n, _, _)| *n).max().unwrap_or(0);
        let emit = |out: &mut BTreeMap<PhaseExponent, QSqrtP>, idx: &BigInt, k: &QSqrtP| {
            let a = &rest + BigRational::new(idx.clone(), crate::padic::pow_p(p, top));
            accumulate(out, PhaseExponent::new(a, b.clone(), c.clone()), k);
        };
        if top == 0 {
            for (_, _, k) in &items {
                emit(&mut out, &BigInt::zero(), k);
            }
            continue;
        }
        let low = crate::padic::pow_p(p, top - 1);
        let mut level: BTreeMap<BigInt, QSqrtP> = BTreeMap::new();
        for (n, x, k) in items {
            let idx = x * crate::padic::pow_p(p, top - n);
            let entry = level.entry(idx).or_insert_with(|| QSqrtP::zero(p));
            *entry = &*entry + &k;
        }
        let pm1 = BigInt::from(p - 1);
        let mut reduced: BTreeMap<BigInt, QSqrtP> = BTreeMap::new();
        for (idx, k) in level {
            let (digit, i0) = idx.div_rem(&low);
            if digit == pm1 {
                let neg = -&k;
                for t in 0..(p - 1) {
                    let j = &i0 + &low * BigInt::from(t);
                    let entry = reduced.entry(j).or_insert_with(|| QSqrtP::zero(p));
                    *entry = &*entry + &neg;
                }
            } else {
                let entry = reduced.entry(idx).or_insert_with(|| QSqrtP::zero(p));
                *entry = &*entry + &k;
            }
        }
        for (idx, k) in reduced {
            emit(&mut out, &idx, &k);
        }
    }
    out
}

impl Add for &PhasePolynomial {
    type Output = PhasePolynomial;
    fn add(self, rhs: &PhasePolynomial) -> PhasePolynomial {
        PhasePolynomial::from_terms(
            self.p,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }
}

impl Neg for &PhasePolynomial {
    type Output = PhasePolynomial;
    fn neg(self) -> PhasePolynomial {
        PhasePolynomial {
            p: self.p,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &PhasePolynomial {
    type Output = PhasePolynomial;
    fn sub(self, rhs: &PhasePolynomial) -> PhasePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &PhasePolynomial {
    type Output = PhasePolynomial;
    fn mul(self, rhs: &PhasePolynomial) -> PhasePolynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                terms.push((e1 + e2, c1 * c2));
            }
        }
        PhasePolynomial::from_terms(self.p, terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PhasePolynomial {
            type Output = PhasePolynomial;
            fn $m(self, rhs: PhasePolynomial) -> PhasePolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
