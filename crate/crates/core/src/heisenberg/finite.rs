use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::element::ModuleElement;
use super::inner::{lattice_index, InnerProductTable};
use crate::algebra::{Generator, Side};
use crate::error::{Error, Result};
use crate::functions::{mrs_ball, overlap, InnerValue, RealFunction};
use crate::padic::pow_p;
use crate::phase::{PhaseExponent, ThetaLaurent};
use crate::scalar::{cis_turns, from_f64, from_rational, Real};

/// An element of `C_c(R × Z/p^{2j})`, stored as `m ↦ F(·, [m])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStageElement {
    p: u32,
    j: u32,
    residues: BTreeMap<BigInt, RealFunction>,
}

impl FiniteStageElement {
    pub fn zero(p: u32, j: u32) -> Self {
        FiniteStageElement { p, j, residues: BTreeMap::new() }
    }

    /// `f ⊗ δ_m`.
    pub fn elementary(p: u32, j: u32, m: &BigInt, f: RealFunction) -> Self {
        FiniteStageElement::from_residues(p, j, vec![(m.clone(), f)])
    }

    pub fn from_residues(p: u32, j: u32, items: Vec<(BigInt, RealFunction)>) -> Self {
        let modulus = pow_p(p, 2 * j);
        let mut residues: BTreeMap<BigInt, RealFunction> = BTreeMap::new();
        for (m, f) in items {
            let m = m.mod_floor(&modulus);
            let sum = match residues.remove(&m) {
                Some(old) => old.add(&f),
                None => f,
            };
            if !sum.is_zero() {
                residues.insert(m, sum);
            }
        }
        FiniteStageElement { p, j, residues }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.j
    }

    pub fn residues(&self) -> &BTreeMap<BigInt, RealFunction> {
        &self.residues
    }

    pub fn modulus(&self) -> BigInt {
        pow_p(self.p, 2 * self.j)
    }

    pub fn add(&self, other: &FiniteStageElement) -> FiniteStageElement {
        let items = self.residues.iter().chain(other.residues.iter());
        let items = items.map(|(m, f)| (m.clone(), f.clone())).collect();
        FiniteStageElement::from_residues(self.p, self.j, items)
    }

    fn map(&self, f: impl Fn(&BigInt, &RealFunction) -> (BigInt, RealFunction)) -> Self {
        let items = self.residues.iter().map(|(m, g)| f(m, g)).collect();
        FiniteStageElement::from_residues(self.p, self.j, items)
    }

    /// `U F(t, [m]) = F(t + θ, [m - 1])` and
    /// `V F(t, [m]) = e^{2πi(t - m)/p^{2j}} F(t, [m])`.
    pub fn act(&self, which: Generator) -> FiniteStageElement {
        self.act_power(which, 1)
    }

    pub fn act_inverse(&self, which: Generator) -> FiniteStageElement {
        self.act_power(which, -1)
    }

    /// `U^k` or `V^k` for any integer `k`.
    pub fn act_power(&self, which: Generator, k: i64) -> FiniteStageElement {
        let modulus = self.modulus();
        let kk = BigInt::from(k);
        match which {
            Generator::U => {
                let shift = ThetaLaurent::monomial(BigRational::from_integer(kk.clone()), 1);
                self.map(|m, f| (m + &kk, f.translate(&shift)))
            }
            Generator::V => {
                let freq = BigRational::new(kk.clone(), modulus.clone());
                let w = ThetaLaurent::constant(freq.clone());
                self.map(|m, f| {
                    let phase = PhaseExponent::rational(-(&freq * BigRational::from_integer(m.clone())));
                    (m.clone(), f.modulate(&w).mul_phase(&phase))
                })
            }
        }
    }

    /// `F(u, [m])` numerically.
    pub fn eval<T: Real>(&self, u: T, m: &BigInt, theta: T) -> Result<Complex<T>> {
        match self.residues.get(&m.mod_floor(&self.modulus())) {
            Some(f) => f.eval(u, theta),
            None => Ok(Complex::new(T::zero(), T::zero())),
        }
    }

    /// Smallest and largest atom center at `θ`, and the smallest width.
    fn atom_extent<T: Real>(&self, theta: T) -> Option<(T, T, T)> {
        let mut out: Option<(T, T, T)> = None;
        for f in self.residues.values() {
            for shape in f.atoms().keys() {
                let mu = shape.center.eval(theta);
                let a: T = from_rational(&shape.width);
                out = Some(match out {
                    None => (mu, mu, a),
                    Some((lo, hi, w)) => (lo.min(mu), hi.max(mu), w.min(a)),
                });
            }
        }
        out
    }
}

/// `Ψ_j(f ⊗ δ_m)(q, t) = f(p^j t) χ_{-m/p^j + p^j Z_p}(q)`.
pub fn psi_map(x: &FiniteStageElement) -> ModuleElement {
    let p = x.p;
    let j = x.j;
    let modulus = x.modulus();
    let terms = x
        .residues
        .iter()
        .map(|(m, f)| {
            let target = (-m).mod_floor(&modulus);
            (mrs_ball(p, j, &target), f.dilate_p(j as i64))
        })
        .collect();
    ModuleElement::from_terms(p, terms)
}

/// True when `⟨x, y⟩(·, n)` vanishes identically because no pair of
/// residues satisfies `m1 - m2 ≡ n`.
pub fn finite_stage_vanishes(x: &FiniteStageElement, y: &FiniteStageElement, n: i64) -> bool {
    let modulus = x.modulus();
    x.residues
        .keys()
        .all(|m1| !y.residues.contains_key(&(m1 - BigInt::from(n)).mod_floor(&modulus)))
}

/// Truncation used by the lattice-sum strategy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeWindow {
    pub lo: i64,
    pub hi: i64,
}

/// Lattice indices `ℓ` outside which every term is below `e^{-cutoff}`.
pub fn lattice_window<T: Real>(x: &FiniteStageElement, t: T, theta: T, cutoff: T) -> LatticeWindow {
    let big_n: T = from_f64(pow_p(x.p, 2 * x.j).to_f64().unwrap_or(f64::MAX));
    let Some((lo, hi, a)) = x.atom_extent(theta) else {
        return LatticeWindow { lo: 0, hi: -1 };
    };
    let half = (cutoff / (T::PI() * a)).sqrt() + T::one();
    let base = big_n * t;
    LatticeWindow {
        lo: (lo - base - half).floor().to_i64().unwrap_or(i64::MIN / 2),
        hi: (hi - base + half).ceil().to_i64().unwrap_or(i64::MAX / 2),
    }
}

/// Strategy A: `Σ_ℓ F1(Nt + ℓ, [ℓ]) conj F2(Nt + ℓ + nθ, [ℓ - n])`, `N = p^{2j}`,
/// over the given window of `ℓ`.
pub fn finite_stage_inner_lattice<T: Real>(
    x: &FiniteStageElement,
    y: &FiniteStageElement,
    t: T,
    n: i64,
    theta: T,
    window: LatticeWindow,
) -> Result<Complex<T>> {
    let big_n: T = from_f64(x.modulus().to_f64().unwrap_or(f64::MAX));
    let nn: T = from_f64(n as f64);
    let mut acc = Complex::new(T::zero(), T::zero());
    for l in window.lo..=window.hi {
        let lt: T = from_f64(l as f64);
        let u = big_n * t + lt;
        let a = x.eval(u, &BigInt::from(l), theta)?;
        if a.norm() == T::zero() {
            continue;
        }
        let b = y.eval(u + nn * theta, &BigInt::from(l - n), theta)?;
        acc = acc + a * b.conj();
    }
    Ok(acc)
}

/// Strategy B coefficient of `e^{2πikt}`:
/// `Σ_{m1 - m2 ≡ n} p^{-2j} e^{2πikm1/p^{2j}} ∫ e^{-2πiku/p^{2j}} φ1(u) conj φ2(u + nθ) du`.
pub fn finite_stage_fourier_coefficient(
    x: &FiniteStageElement,
    y: &FiniteStageElement,
    n: i64,
    k: i64,
) -> InnerValue {
    let modulus = x.modulus();
    let inv_n = BigRational::new(BigInt::one(), modulus.clone());
    let shift = ThetaLaurent::monomial(BigRational::from_integer(n.into()), 1);
    let freq = ThetaLaurent::constant(&inv_n * BigRational::from_integer(k.into()));
    let scale = crate::phase::PhasePolynomial::rational(x.p, inv_n.clone());
    let mut out = InnerValue::zero(x.p);
    for (m1, f1) in &x.residues {
        let m2 = (m1 - BigInt::from(n)).mod_floor(&modulus);
        let Some(f2) = y.residues.get(&m2) else {
            continue;
        };
        let phase = PhaseExponent::rational(BigRational::new(m1 * BigInt::from(k), modulus.clone()));
        out = out.add(&overlap(f1, f2, &shift, &freq).mul_phase(&phase).scale(&scale));
    }
    out
}

/// Strategy B: the Fourier series `Σ_{|k| ≤ K} c_k e^{2πikt}`.
pub fn finite_stage_inner_fourier<T: Real>(
    x: &FiniteStageElement,
    y: &FiniteStageElement,
    t: T,
    n: i64,
    theta: T,
    fourier_range: u32,
) -> Result<Complex<T>> {
    let kk = fourier_range as i64;
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in -kk..=kk {
        let c = finite_stage_fourier_coefficient(x, y, n, k).eval(theta)?;
        acc = acc + c * cis_turns(from_f64::<T>(k as f64) * t);
    }
    Ok(acc)
}

/// `Φ(Λ)(t, n) = Σ_{k} Λ(n/p^j, k/p^j) e^{2πikt}` over entries with `|k| ≤ K`.
pub fn phi_map<T: Real>(
    table: &InnerProductTable,
    j: u32,
    n: i64,
    t: T,
    theta: T,
    fourier_range: u32,
) -> Result<Complex<T>> {
    if table.side != Side::D {
        return Err(Error::MultiplierMismatch);
    }
    let target = BigInt::from(n);
    let bound = BigInt::from(fourier_range);
    let mut acc = Complex::new(T::zero(), T::zero());
    for (g, v) in &table.entries {
        if lattice_index(&g.r1, j).as_ref() != Some(&target) {
            continue;
        }
        let Some(k) = lattice_index(&g.r2, j) else {
            continue;
        };
        if k > bound || k < -&bound {
            continue;
        }
        let kt: T = from_f64(k.to_f64().unwrap_or(0.0));
        acc = acc + v.eval(theta)? * cis_turns(kt * t);
    }
    Ok(acc)
}
