use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::element::ModuleElement;
use crate::algebra::{AlgebraElement, GammaElement, Multiplier};
use crate::error::{Error, Result};
use crate::functions::{mrs_ball, overlap, InnerValue, RealFunction};
use crate::padic::{pow_p, PAdicRational};
use crate::phase::{PhaseExponent, PhasePolynomial, QSqrtP, ThetaLaurent};

/// `ρ^(j)(χ_m ⊗ f) = √p^j χ_{m/p^j + p^j Z_p} ⊗ f`.
pub fn rho_j(p: u32, j: u32, m: &BigInt, f: &RealFunction) -> Result<ModuleElement> {
    let modulus = pow_p(p, 2 * j);
    if m.is_negative() || *m >= modulus {
        return Err(Error::ResidueOutOfRange {
            residue: i64::try_from(m).unwrap_or(i64::MAX),
            modulus: u64::try_from(&modulus).unwrap_or(u64::MAX),
        });
    }
    let norm = PhasePolynomial::scalar(QSqrtP::sqrt_p_pow(p, j as i64));
    Ok(ModuleElement::elementary(mrs_ball(p, j, m), f.scale(&norm)))
}

/// An element of `V_j` in the basis `ρ^(j)(χ_m ⊗ ·)`, `m ∈ [0, p^{2j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoCoords {
    p: u32,
    j: u32,
    coords: BTreeMap<BigInt, RealFunction>,
}

impl RhoCoords {
    pub fn zero(p: u32, j: u32) -> Self {
        RhoCoords { p, j, coords: BTreeMap::new() }
    }

    pub fn basis(p: u32, j: u32, m: &BigInt, f: RealFunction) -> Self {
        RhoCoords::from_coords(p, j, vec![(m.clone(), f)])
    }

    /// Residues are reduced mod `p^{2j}` and equal residues summed.
    pub fn from_coords(p: u32, j: u32, items: Vec<(BigInt, RealFunction)>) -> Self {
        let modulus = pow_p(p, 2 * j);
        let mut coords: BTreeMap<BigInt, RealFunction> = BTreeMap::new();
        for (m, f) in items {
            let m = m.mod_floor(&modulus);
            let sum = match coords.remove(&m) {
                Some(old) => old.add(&f),
                None => f,
            };
            if !sum.is_zero() {
                coords.insert(m, sum);
            }
        }
        RhoCoords { p, j, coords }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.j
    }

    pub fn coords(&self) -> &BTreeMap<BigInt, RealFunction> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn modulus(&self) -> BigInt {
        pow_p(self.p, 2 * self.j)
    }

    pub fn to_module(&self) -> ModuleElement {
        let norm = PhasePolynomial::scalar(QSqrtP::sqrt_p_pow(self.p, self.j as i64));
        let terms = self
            .coords
            .iter()
            .map(|(m, f)| (mrs_ball(self.p, self.j, m), f.scale(&norm)))
            .collect();
        ModuleElement::from_terms(self.p, terms)
    }

    /// Coordinates of `F` in `V_j`, or `None` if `F ∉ V_j`.
    pub fn from_module(f: &ModuleElement, j: u32) -> Option<RhoCoords> {
        let p = f.p();
        let inv = PhasePolynomial::scalar(QSqrtP::sqrt_p_pow(p, -(j as i64)));
        let jj = j as i64;
        let mut items = Vec::new();
        for (b, g) in f.terms() {
            if b.scale() > jj || b.scale() < -jj || !b.center().vp().at_least(-jj) {
                return None;
            }
            for child in b.refine(jj).ok()? {
                let m = child.center().shift(jj);
                debug_assert!(m.is_integer());
                items.push((m.numerator().clone(), g.scale(&inv)));
            }
        }
        Some(RhoCoords::from_coords(p, j, items))
    }

    /// The same vector in the level `j+1` basis: each coordinate `m` splits
    /// into `pm + k p^{2j+1}`, `k < p`, with coefficient `1/√p`.
    pub fn refine(&self) -> RhoCoords {
        self.refine_with(&QSqrtP::sqrt_p_pow(self.p, -1))
    }

    pub(crate) fn refine_with(&self, coeff: &QSqrtP) -> RhoCoords {
        let p = self.p;
        let step = pow_p(p, 2 * self.j + 1);
        let c = PhasePolynomial::scalar(coeff.clone());
        let mut items = Vec::new();
        for (m, f) in &self.coords {
            let g = f.scale(&c);
            for k in 0..p {
                items.push((m * BigInt::from(p) + &step * BigInt::from(k), g.clone()));
            }
        }
        RhoCoords::from_coords(p, self.j + 1, items)
    }

    /// Integer coordinates `(a, b)` of `γ = (a/p^j, b/p^j)`, if `γ ∈ D^j`.
    pub fn level_coords(&self, g: &GammaElement) -> Option<(BigInt, BigInt)> {
        let j = self.j as i64;
        let a = g.r1.shift(j);
        let b = g.r2.shift(j);
        (a.is_integer() && b.is_integer()).then(|| (a.numerator().clone(), b.numerator().clone()))
    }

    /// `δ_γ · x` for `γ = (a/p^j, b/p^j) ∈ D^j`: residue `m ↦ m - a`, phase
    /// `e^{2πi(m-a)b/p^{2j}}`, and `f ↦ e^{2πitb/p^j} f(t + θa/p^j)`.
    pub fn act(&self, g: &GammaElement) -> Result<RhoCoords> {
        let (a, b) = self
            .level_coords(g)
            .ok_or_else(|| Error::NotPPower(format!("{:?} is not in D^{}", g, self.j)))?;
        let modulus = self.modulus();
        let shift = ThetaLaurent::monomial(g.r1.to_rational(), 1);
        let freq = ThetaLaurent::constant(g.r2.to_rational());
        let items = self
            .coords
            .iter()
            .map(|(m, f)| {
                let target = (m - &a).mod_floor(&modulus);
                let phase = PhaseExponent::rational(BigRational::new(&target * &b, modulus.clone()));
                (target, f.translate(&shift).modulate(&freq).mul_phase(&phase))
            })
            .collect();
        Ok(RhoCoords::from_coords(self.p, self.j, items))
    }

    /// `a · x` for an element of `C_c(D^j, η)`.
    pub fn act_algebra(&self, a: &AlgebraElement) -> Result<RhoCoords> {
        if *a.multiplier() != Multiplier::EtaD {
            return Err(Error::MultiplierMismatch);
        }
        let mut items = Vec::new();
        for (g, c) in a.coeffs() {
            items.extend(self.act(g)?.coords.into_iter().map(|(m, f)| (m, f.scale(c))));
        }
        Ok(RhoCoords::from_coords(self.p, self.j, items))
    }

    pub fn add(&self, other: &RhoCoords) -> RhoCoords {
        let items = self.coords.iter().chain(other.coords.iter());
        RhoCoords::from_coords(self.p, self.j, items.map(|(m, f)| (m.clone(), f.clone())).collect())
    }
}

/// `⟨x, y⟩_A(γ)` for `γ = (k1/p^j, k2/p^j) ∈ D^j` from coordinates alone:
/// `Σ_{m1 ≡ m2 - k1} e^{-2πi m1 k2/p^{2j}} ∫ e^{-2πitk2/p^j} f1(t) conj f2(t + θk1/p^j) dt`.
pub fn coord_inner_left(x: &RhoCoords, y: &RhoCoords, g: &GammaElement) -> Result<InnerValue> {
    if x.j != y.j || x.p != y.p {
        return Err(Error::PrimeMismatch(x.p, y.p));
    }
    let (k1, k2) = x
        .level_coords(g)
        .ok_or_else(|| Error::NotPPower(format!("{:?} is not in D^{}", g, x.j)))?;
    let modulus = x.modulus();
    let shift = ThetaLaurent::monomial(g.r1.to_rational(), 1);
    let freq = ThetaLaurent::constant(g.r2.to_rational());
    let mut out = InnerValue::zero(x.p);
    for (m1, f1) in &x.coords {
        let m2 = (m1 + &k1).mod_floor(&modulus);
        let Some(f2) = y.coords.get(&m2) else {
            continue;
        };
        let phase = PhaseExponent::rational(BigRational::new(-(m1 * &k2), modulus.clone()));
        out = out.add(&overlap(f1, f2, &shift, &freq).mul_phase(&phase));
    }
    Ok(out)
}

/// `1/√p` with the rational part perturbed, for negative controls.
pub(crate) fn corrupted_refinement_coefficient(p: u32) -> QSqrtP {
    let base = QSqrtP::sqrt_p_pow(p, -1);
    &base + &QSqrtP::rational(p, BigRational::new(BigInt::one(), BigInt::from(1000)))
}

/// `(a/p^j, b/p^j)`.
pub fn gamma_at_level(p: u32, j: u32, a: &BigInt, b: &BigInt) -> GammaElement {
    GammaElement::new(
        PAdicRational::from_parts(p, a.clone(), j as i64),
        PAdicRational::from_parts(p, b.clone(), j as i64),
    )
}
