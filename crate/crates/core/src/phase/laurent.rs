use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exponent::{mod_one, PhaseExponent};
use crate::scalar::{from_rational, Real};

/// A Laurent polynomial `Σ q_k θ^k` in a formal `θ` with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaLaurent {
    terms: BTreeMap<i32, BigRational>,
}

impl ThetaLaurent {
    pub fn zero() -> Self {
        ThetaLaurent::default()
    }

    pub fn monomial(q: BigRational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(k, q);
        }
        ThetaLaurent { terms }
    }

    pub fn constant(q: BigRational) -> Self {
        ThetaLaurent::monomial(q, 0)
    }

    /// `q0 + q1 θ`.
    pub fn linear(q0: BigRational, q1: BigRational) -> Self {
        &ThetaLaurent::constant(q0) + &ThetaLaurent::monomial(q1, 1)
    }

    pub fn theta() -> Self {
        ThetaLaurent::monomial(BigRational::one(), 1)
    }

    pub fn coeff(&self, k: i32) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(k, q)| (*k, q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return ThetaLaurent::zero();
        }
        ThetaLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    /// Multiplies by `θ^k`.
    pub fn shift(&self, k: i32) -> Self {
        ThetaLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn eval<T: Real>(&self, theta: T) -> T {
        self.terms.iter().fold(T::zero(), |acc, (k, c)| {
            acc + from_rational::<T>(c) * theta.powi(*k)
        })
    }

    /// Splits `e^{2πi x}` into a lattice exponent on `1, θ, 1/θ` and the
    /// remaining powers of `θ`; the constant term is reduced mod 1.
    pub fn split_phase(&self) -> (PhaseExponent, ThetaLaurent) {
        let lattice = PhaseExponent::new(self.coeff(0), self.coeff(1), self.coeff(-1));
        let rest = ThetaLaurent {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| !(-1..=1).contains(*k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        };
        (lattice, rest)
    }

    /// Same polynomial with the constant term reduced into `[0, 1)`.
    pub fn reduce_constant_mod_one(&self) -> Self {
        let mut out = self.clone();
        let c = mod_one(&self.coeff(0));
        if c.is_zero() {
            out.terms.remove(&0);
        } else {
            out.terms.insert(0, c);
        }
        out
    }

    fn insert_add(&mut self, k: i32, q: BigRational) {
        let entry = self.terms.entry(k).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }
}

impl From<&PhaseExponent> for ThetaLaurent {
    fn from(e: &PhaseExponent) -> Self {
        let mut out = ThetaLaurent::constant(e.a().clone());
        out.insert_add(1, e.b().clone());
        out.insert_add(-1, e.c().clone());
        out
    }
}

impl fmt::Display for ThetaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ThetaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn add(self, rhs: &ThetaLaurent) -> ThetaLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }
}

impl Neg for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn neg(self) -> ThetaLaurent {
        ThetaLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn sub(self, rhs: &ThetaLaurent) -> ThetaLaurent {
        self + &(-rhs)
    }
}

impl Mul for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn mul(self, rhs: &ThetaLaurent) -> ThetaLaurent {
        let mut out = ThetaLaurent::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.insert_add(i + j, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ThetaLaurent {
            type Output = ThetaLaurent;
            fn $m(self, rhs: ThetaLaurent) -> ThetaLaurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
