use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::balls::{normalize, BallValue};
use crate::padic::{pow_p, Ball, PAdicRational};
use crate::phase::{PhaseExponent, PhasePolynomial, QSqrtP};

impl BallValue for PhasePolynomial {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// A locally constant compactly supported function on `Q_p`,
/// `Σ c_k χ_{B_k}` over disjoint canonical balls.
#[derive(Clone, PartialEq, Eq)]
pub struct TestFunctionQp {
    p: u32,
    terms: BTreeMap<Ball, PhasePolynomial>,
}

impl TestFunctionQp {
    pub fn zero(p: u32) -> Self {
        TestFunctionQp { p, terms: BTreeMap::new() }
    }

    pub fn indicator(b: Ball) -> Self {
        let p = b.p();
        TestFunctionQp::from_terms(p, vec![(b, PhasePolynomial::one(p))])
    }

    pub fn from_terms(p: u32, terms: Vec<(Ball, PhasePolynomial)>) -> Self {
        TestFunctionQp { p, terms: normalize(terms) }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Ball, PhasePolynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TestFunctionQp) -> TestFunctionQp {
        let all = self.terms.iter().chain(other.terms.iter());
        TestFunctionQp::from_terms(self.p, all.map(|(b, c)| (b.clone(), c.clone())).collect())
    }

    pub fn scale(&self, c: &PhasePolynomial) -> TestFunctionQp {
        let terms = self.terms.iter().map(|(b, k)| (b.clone(), k * c)).collect();
        TestFunctionQp::from_terms(self.p, terms)
    }

    pub fn eval(&self, q: &PAdicRational) -> PhasePolynomial {
        self.terms
            .iter()
            .find(|(b, _)| b.contains(q))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| PhasePolynomial::zero(self.p))
    }

    /// `q ↦ f(q + r)`.
    pub fn translate(&self, r: &PAdicRational) -> TestFunctionQp {
        let shift = -r;
        let terms = self.terms.iter().map(|(b, c)| (b.translate(&shift), c.clone())).collect();
        TestFunctionQp::from_terms(self.p, terms)
    }

    /// `q ↦ e^{2πi {q x}_p} f(q)`.
    pub fn mul_char(&self, x: &PAdicRational) -> TestFunctionQp {
        let terms = char_refine(self.terms.iter().map(|(b, c)| (b.clone(), c.clone())), x);
        TestFunctionQp::from_terms(self.p, terms)
    }

    /// `q ↦ f(q/p)`.
    pub fn dilate(&self) -> TestFunctionQp {
        let terms = self.terms.iter().map(|(b, c)| (b.dilate(), c.clone())).collect();
        TestFunctionQp::from_terms(self.p, terms)
    }

    pub fn integrate(&self) -> PhasePolynomial {
        let mut acc = PhasePolynomial::zero(self.p);
        for (b, c) in &self.terms {
            acc = &acc + &c.scale(&QSqrtP::rational(self.p, b.measure()));
        }
        acc
    }

    /// Coefficients over `χ_{Ball(m/p^j, j)}`, `m = 0..p^{2j}`, or `None`
    /// when `f` is not in that span.
    pub fn mrs_express(&self, j: u32) -> Option<Vec<PhasePolynomial>> {
        let p = self.p;
        let size = pow_p(p, 2 * j);
        let n: usize = size.try_into().ok()?;
        let mut out = vec![PhasePolynomial::zero(p); n];
        let jj = j as i64;
        for (b, c) in &self.terms {
            if b.scale() > jj || b.scale() < -jj {
                return None;
            }
            for kid in b.refine(jj).ok()? {
                let m = kid.center().shift(jj);
                if !m.is_integer() {
                    return None;
                }
                let idx: usize = m.numerator().try_into().ok()?;
                if idx >= n {
                    return None;
                }
                out[idx] = c.clone();
            }
        }
        Some(out)
    }

    /// `Σ_m c_m χ_{Ball(m/p^j, j)}`.
    pub fn from_mrs(p: u32, j: u32, coeffs: &[PhasePolynomial]) -> TestFunctionQp {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| (mrs_ball(p, j, &BigInt::from(m)), c.clone()))
            .collect();
        TestFunctionQp::from_terms(p, terms)
    }
}

impl fmt::Debug for TestFunctionQp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `Ball(m/p^j, j)`.
pub fn mrs_ball(p: u32, j: u32, m: &BigInt) -> Ball {
    Ball::new(PAdicRational::new(p, m.clone(), j), j as i64)
}

/// Refines each ball until `q ↦ e^{2πi {q x}_p}` is constant on it and folds
/// that constant into the value.
pub(crate) fn char_refine<V, I>(items: I, x: &PAdicRational) -> Vec<(Ball, V)>
where
    I: IntoIterator<Item = (Ball, V)>,
    V: PhaseScalable,
{
    let need = x.vp().finite().map(|v| -v);
    let mut out = Vec::new();
    for (b, v) in items {
        let balls = match need {
            Some(s) if s > b.scale() => b.refine(s).expect("finer scale"),
            _ => vec![b],
        };
        for k in balls {
            let e = PhaseExponent::rational((k.center() * x).frac_p().to_rational());
            let w = v.times_phase(&e);
            out.push((k, w));
        }
    }
    out
}

pub(crate) trait PhaseScalable {
    fn times_phase(&self, e: &PhaseExponent) -> Self;
}

impl PhaseScalable for PhasePolynomial {
    fn times_phase(&self, e: &PhaseExponent) -> Self {
        self.mul_phase(e)
    }
}
