use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;

use super::element::{HeisPoint, ModuleElement};
use crate::algebra::{DPoint, GammaElement, Side};
use crate::error::{Error, Result};
use crate::functions::{overlap, InnerValue};
use crate::padic::{char_integral, pow_p_rational, PAdicRational, Valuation};
use crate::phase::{PhaseExponent, PhasePolynomial, QSqrtP};
use crate::scalar::{from_rational, Real};

/// `⟨F, π(y) G⟩ = ∫∫ F(q,t) conj((π(y)G)(q,t)) dq dt`, exactly.
pub fn heis_pairing(f: &ModuleElement, g: &ModuleElement, y: &HeisPoint) -> InnerValue {
    let p = f.p();
    let shift = -&y.x1;
    let freq = -&y.x2;
    let mut out = InnerValue::zero(p);
    for (b1, f1) in f.terms() {
        for (b2, g2) in g.terms() {
            let Some(common) = b1.intersect(&b2.translate(&shift)) else {
                continue;
            };
            let ci = char_integral(&common, &freq);
            if ci.is_zero() {
                continue;
            }
            let c = PhasePolynomial::monomial(
                QSqrtP::rational(p, ci.magnitude),
                PhaseExponent::rational(ci.exponent.to_rational()),
            );
            out = out.add(&overlap(f1, g2, &y.s1, &y.s2).scale(&c));
        }
    }
    out
}

/// `⟨F1, F2⟩_A(d) = ⟨F1, π(ι_θ d) F2⟩`.
pub fn inner_left(f1: &ModuleElement, f2: &ModuleElement, d: &DPoint) -> Result<InnerValue> {
    if d.side != Side::D {
        return Err(Error::MultiplierMismatch);
    }
    Ok(heis_pairing(f1, f2, &HeisPoint::embed(d)))
}

/// `⟨F1, F2⟩_B(e) = θ^{-1} ⟨F2, F1·δ_e⟩ = θ^{-1} η(e,-e) ⟨F2, π(-e) F1⟩`.
pub fn inner_right(f1: &ModuleElement, f2: &ModuleElement, e: &DPoint) -> Result<InnerValue> {
    if e.side != Side::DPerp {
        return Err(Error::MultiplierMismatch);
    }
    let y = HeisPoint::embed(e);
    let (w, rest) = y.eta(&y.neg()).split_phase();
    debug_assert!(rest.is_zero());
    Ok(heis_pairing(f2, f1, &y.neg()).mul_phase(&w).mul_theta_pow(-1))
}

/// Nonzero values of an inner product on the truncated lattice
/// `|r1|, |r2| ≤ R`, `denominators ≤ p^L`.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProductTable {
    pub side: Side,
    pub p: u32,
    pub radius: BigRational,
    pub denom_bound: u32,
    pub entries: BTreeMap<GammaElement, InnerValue>,
}

impl InnerProductTable {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn point(&self, g: &GammaElement) -> DPoint {
        DPoint { side: self.side, r1: g.r1.clone(), r2: g.r2.clone() }
    }

    pub fn get(&self, g: &GammaElement) -> InnerValue {
        self.entries.get(g).cloned().unwrap_or_else(|| InnerValue::zero(self.p))
    }

    pub fn eval<T: Real>(&self, theta: T) -> Result<Vec<(GammaElement, Complex<T>)>> {
        self.entries
            .iter()
            .map(|(g, v)| Ok((g.clone(), v.eval(theta)?)))
            .collect()
    }

    /// The table of `x ↦ conj(σ(x,-x) f(-x))` with `σ` the side's multiplier.
    pub fn involution(&self) -> InnerProductTable {
        let entries = self
            .entries
            .iter()
            .map(|(g, v)| {
                let neg = -g;
                let s = side_multiplier(&self.point(&neg), &self.point(g));
                (neg, v.mul_phase(&s).conj())
            })
            .collect();
        InnerProductTable { entries, ..self.clone() }
    }
}

fn side_multiplier(x: &DPoint, y: &DPoint) -> PhaseExponent {
    crate::algebra::eta(x, y).expect("points share a side")
}

/// Offsets `x` with `|x| ≤ R`, `vp(x) ≥ -L` and `vp(x - base) ≥ level`.
fn progression(
    p: u32,
    base: &PAdicRational,
    level: i64,
    radius: &BigRational,
    bound: u32,
) -> Vec<PAdicRational> {
    let lo = -(bound as i64);
    let base = if base.vp().at_least(level) { PAdicRational::zero(p) } else { base.clone() };
    if let Valuation::Finite(v) = base.vp() {
        if v < lo {
            return Vec::new();
        }
    }
    let step_exp = level.max(lo);
    let step = pow_p_rational(p, step_exp);
    let b = base.to_rational();
    let kmin = ((-radius - &b) / &step).ceil().to_integer();
    let kmax = ((radius - &b) / &step).floor().to_integer();
    let mut out = Vec::new();
    let mut k = kmin;
    while k <= kmax {
        let x = &b + &step * BigRational::from_integer(k.clone());
        out.push(PAdicRational::from_rational(p, &x).expect("p-power denominator"));
        k += 1;
    }
    out
}

/// Candidate `y.x1, y.x2` for which `⟨A, π(y) B⟩` may be nonzero.
fn candidates(
    a: &ModuleElement,
    b: &ModuleElement,
    radius: &BigRational,
    bound: u32,
) -> BTreeSet<(PAdicRational, PAdicRational)> {
    let p = a.p();
    let mut out = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for ba in a.terms().keys() {
        for bb in b.terms().keys() {
            let jmin = ba.scale().min(bb.scale());
            let jmax = ba.scale().max(bb.scale());
            let base = bb.center() - ba.center();
            let base = base.shift(-jmin).frac_p().shift(jmin);
            if !seen.insert((base.clone(), jmin, jmax)) {
                continue;
            }
            let xs = progression(p, &base, jmin, radius, bound);
            let zs = progression(p, &PAdicRational::zero(p), -jmax, radius, bound);
            for x in &xs {
                for z in &zs {
                    out.insert((x.clone(), z.clone()));
                }
            }
        }
    }
    out
}

fn build_table(
    side: Side,
    p: u32,
    radius: &BigRational,
    bound: u32,
    points: Vec<GammaElement>,
    value: impl Fn(&DPoint) -> Result<InnerValue> + Sync,
) -> Result<InnerProductTable> {
    let values: Vec<Result<(GammaElement, InnerValue)>> = points
        .into_par_iter()
        .map(|g| {
            let d = DPoint { side, r1: g.r1.clone(), r2: g.r2.clone() };
            Ok((g, value(&d)?))
        })
        .collect();
    let mut entries = BTreeMap::new();
    for v in values {
        let (g, val) = v?;
        if !val.is_zero() {
            entries.insert(g, val);
        }
    }
    Ok(InnerProductTable { side, p, radius: radius.clone(), denom_bound: bound, entries })
}

/// All nonzero `⟨F1, F2⟩_A(d)` within the truncation bounds.
pub fn inner_left_table(
    f1: &ModuleElement,
    f2: &ModuleElement,
    radius: &BigRational,
    denom_bound: u32,
) -> Result<InnerProductTable> {
    let points = candidates(f1, f2, radius, denom_bound)
        .into_iter()
        .map(|(x1, x2)| GammaElement::new(x1, x2))
        .collect();
    build_table(Side::D, f1.p(), radius, denom_bound, points, |d| inner_left(f1, f2, d))
}

/// All nonzero `⟨F1, F2⟩_B(e)` within the truncation bounds.
pub fn inner_right_table(
    f1: &ModuleElement,
    f2: &ModuleElement,
    radius: &BigRational,
    denom_bound: u32,
) -> Result<InnerProductTable> {
    let points = candidates(f2, f1, radius, denom_bound)
        .into_iter()
        .map(|(x1, x2)| GammaElement::new(-x1, -x2))
        .collect();
    build_table(Side::DPerp, f1.p(), radius, denom_bound, points, |e| inner_right(f1, f2, e))
}

/// Size of the largest omitted term of a table: the Gaussian envelope of the
/// first lattice points beyond radius `R`, summed over atom pairs.
pub fn tail_envelope<T: Real>(
    f1: &ModuleElement,
    f2: &ModuleElement,
    side: Side,
    radius: T,
    theta: T,
) -> T {
    let (shift_scale, freq_scale) = match side {
        Side::D => (theta, T::one()),
        Side::DPerp => (T::one(), theta.recip()),
    };
    let mut total = T::zero();
    for (_, g1) in f1.terms() {
        for (_, g2) in f2.terms() {
            for (s1, c1) in g1.atoms() {
                for (s2, c2) in g2.atoms() {
                    let a1: T = from_rational(&s1.width);
                    let a2: T = from_rational(&s2.width);
                    let big_a = a1 + a2;
                    let h = a1 * a2 / big_a;
                    let dmu = (s1.center.eval(theta) - s2.center.eval(theta)).abs();
                    let dw = (s1.freq.eval(theta) - s2.freq.eval(theta)).abs();
                    let x = (shift_scale * radius - dmu).max(T::zero());
                    let w = (radius * freq_scale - dw).max(T::zero());
                    let env = (-T::PI() * h * x * x).exp().max((-T::PI() * w * w / big_a).exp());
                    let coeff = c1.abs_coeff_sum::<T>() * c2.abs_coeff_sum::<T>();
                    total = total + coeff * env / big_a.sqrt();
                }
            }
        }
    }
    total
}

/// `Σ_x c(x) (π(x) F)(q, t)` for a tabulated numeric function `c` on the
/// given side, where the right side uses `F·δ_e`.
pub fn apply_table_at<T: Real>(
    table: &[(GammaElement, Complex<T>)],
    side: Side,
    f: &ModuleElement,
    q: &PAdicRational,
    t: T,
    theta: T,
) -> Result<Complex<T>> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for (g, c) in table {
        let d = DPoint { side, r1: g.r1.clone(), r2: g.r2.clone() };
        let moved = match side {
            Side::D => super::element::act_left(&d, f)?,
            Side::DPerp => super::element::act_right(f, &d)?,
        };
        acc = acc + *c * moved.eval(q, t, theta)?;
    }
    Ok(acc)
}

/// `k` with `x = k / p^j`, if `x ∈ p^{-j} Z`.
pub fn lattice_index(x: &PAdicRational, j: u32) -> Option<BigInt> {
    let scaled = x.shift(j as i64);
    scaled.is_integer().then(|| scaled.numerator().clone())
}

/// `m mod p^{2j}` in `[0, p^{2j})`.
pub fn residue(m: &BigInt, modulus: &BigInt) -> BigInt {
    m.mod_floor(modulus)
}
