//! The directed system `A_j → A_{j+1}`, `V_j ⊂ V_{j+1}` at finite depth:
//! connecting maps, predictable tails, an ℓ¹ seminorm estimate, and the
//! compatibility checks between stage inner products and actions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::algebra::{generator_delta, AlgebraElement, DPoint, GammaElement, Generator, Multiplier};
use crate::error::{Error, Result};
use crate::functions::InnerValue;
use crate::heisenberg::{
    act_left_algebra, coord_inner_left, corrupted_refinement_coefficient, gamma_at_level,
    heis_pairing, HeisPoint, RhoCoords,
};
use crate::padic::pow_p;
use crate::phase::PhaseExponent;
use crate::scalar::Real;

/// The stage algebras `C_c(D^j, η)` with `φ_j(U_j) = U_{j+1}^p`,
/// `φ_j(V_j) = V_{j+1}^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectedAlgebraSystem {
    pub p: u32,
}

impl DirectedAlgebraSystem {
    pub fn new(p: u32) -> Self {
        DirectedAlgebraSystem { p }
    }

    /// `U_j^a ∗ V_j^b` with negative exponents through the involution.
    pub fn word(&self, j: u32, a: i64, b: i64) -> Result<AlgebraElement> {
        let u = generator_delta(self.p, j, Generator::U).power(a)?;
        let v = generator_delta(self.p, j, Generator::V).power(b)?;
        u.convolve(&v)
    }

    /// `φ_j(x)` computed on words: `δ_{(a,b)/p^j} = e^{-2πi(θ+1)ab/p^{2j}} U_j^a ∗ V_j^b`
    /// is sent to the same phase times `U_{j+1}^{pa} ∗ V_{j+1}^{pb}`.
    pub fn connecting_map(&self, j: u32, x: &AlgebraElement) -> Result<AlgebraElement> {
        if *x.multiplier() != Multiplier::EtaD {
            return Err(Error::MultiplierMismatch);
        }
        let p = i64::from(self.p);
        let modulus = pow_p(self.p, 2 * j);
        let mut acc = AlgebraElement::zero(self.p, Multiplier::EtaD);
        for (g, c) in x.coeffs() {
            let (a, b) = stage_coords(g, j)?;
            let ab = BigRational::new(BigInt::from(a) * BigInt::from(b), modulus.clone());
            let w = PhaseExponent::theta_plus_one(&-ab);
            let image = self.word(j + 1, p * a, p * b)?;
            acc = acc.add(&image.scale(&c.mul_phase(&w)))?;
        }
        Ok(acc)
    }
}

fn stage_coords(g: &GammaElement, j: u32) -> Result<(i64, i64)> {
    let a = g.r1.shift(j as i64);
    let b = g.r2.shift(j as i64);
    if !a.is_integer() || !b.is_integer() {
        return Err(Error::NotPPower(format!("{g:?} is not in D^{j}")));
    }
    let conv = |x: &BigInt| x.to_i64().ok_or_else(|| Error::Config(format!("{x} too large")));
    Ok((conv(a.numerator())?, conv(b.numerator())?))
}

/// A sequence `x_j, x_{j+1}, ...` starting at level `start`, with
/// `x_{n+1} = φ_n(x_n)` for all indices `n ≥ stable`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictableTail {
    pub start: u32,
    pub stable: usize,
    pub stages: Vec<AlgebraElement>,
}

impl PredictableTail {
    /// Checks the tail condition on the stored stages.
    pub fn new(system: &DirectedAlgebraSystem, start: u32, stable: usize, stages: Vec<AlgebraElement>) -> Result<Self> {
        for n in stable..stages.len().saturating_sub(1) {
            let level = start + n as u32;
            if system.connecting_map(level, &stages[n])? != stages[n + 1] {
                return Err(Error::Config(format!("stage {} is not the image of stage {n}", n + 1)));
            }
        }
        Ok(PredictableTail { start, stable, stages })
    }

    /// The tail `x, φ(x), φ²(x), ...` with `depth` stages.
    pub fn generated(system: &DirectedAlgebraSystem, start: u32, x: AlgebraElement, depth: usize) -> Result<Self> {
        let mut stages = vec![x];
        while stages.len() < depth {
            let level = start + stages.len() as u32 - 1;
            let next = system.connecting_map(level, stages.last().expect("nonempty"))?;
            stages.push(next);
        }
        Ok(PredictableTail { start, stable: 0, stages })
    }

    /// Appends images until there are `depth` stages.
    pub fn extend(&self, system: &DirectedAlgebraSystem, depth: usize) -> Result<Self> {
        let mut out = self.clone();
        while out.stages.len() < depth {
            let n = out.stages.len() - 1;
            let next = system.connecting_map(out.start + n as u32, &out.stages[n])?;
            out.stages.push(next);
        }
        Ok(out)
    }
}

/// Upper estimate of the limit seminorm: the largest ℓ¹ norm over stages from
/// the stabilization index up to `depth`, extending the tail as needed.
pub fn seminorm_estimate<T: Real>(
    system: &DirectedAlgebraSystem,
    tail: &PredictableTail,
    depth: usize,
    theta: T,
) -> Result<T> {
    if depth <= tail.stable {
        return Err(Error::Config(format!("depth {depth} below stabilization {}", tail.stable)));
    }
    let tail = tail.extend(system, depth)?;
    let mut best = T::zero();
    for x in &tail.stages[tail.stable..depth] {
        best = best.max(x.l1_norm(theta)?);
    }
    Ok(best)
}

/// Deliberate defects for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectedFault {
    None,
    /// Uses `1/√p + 1/1000` as the refinement coefficient.
    CorruptRefinement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompatReport {
    pub level: u32,
    pub passed: bool,
    pub points: usize,
    pub max_real_discrepancy: f64,
    pub detail: String,
}

fn refined(x: &RhoCoords, fault: DirectedFault) -> RhoCoords {
    match fault {
        DirectedFault::None => x.refine(),
        DirectedFault::CorruptRefinement => x.refine_with(&corrupted_refinement_coefficient(x.p())),
    }
}

/// `⟨x', y'⟩` at a point by expanding the refined coordinates over pairs of
/// level `j+1` basis tensors.
fn bilinear_inner(x: &RhoCoords, y: &RhoCoords, d: &DPoint) -> InnerValue {
    let p = x.p();
    let j = x.level();
    let y_point = HeisPoint::embed(d);
    let mut out = InnerValue::zero(p);
    for (m1, f1) in x.coords() {
        let a = RhoCoords::basis(p, j, m1, f1.clone()).to_module();
        for (m2, f2) in y.coords() {
            let b = RhoCoords::basis(p, j, m2, f2.clone()).to_module();
            out = out.add(&heis_pairing(&a, &b, &y_point));
        }
    }
    out
}

/// `⟨i(x), i(y)⟩_{j+1} = ψ_j(⟨x, y⟩_j)`: the level `j+1` table of the refined
/// vectors agrees with the level `j` table on `D^j` and vanishes on
/// `D^{j+1} \ D^j`, over points with `|r1|, |r2| ≤ R`.
pub fn compat_inner_check<T: Real>(
    x: &RhoCoords,
    y: &RhoCoords,
    radius: u32,
    theta: T,
    tol: T,
    fault: DirectedFault,
) -> Result<CompatReport> {
    let p = x.p();
    let j = x.level();
    let fine_x = refined(x, fault);
    let fine_y = refined(y, fault);
    let span = i64::from(radius) * pow_p(p, j + 1).to_i64().unwrap_or(i64::MAX);
    let pts: Vec<(i64, i64)> = (-span..=span).flat_map(|a| (-span..=span).map(move |b| (a, b))).collect();
    let step = i64::from(p);
    let results: Vec<Result<(bool, T, Option<String>)>> = pts
        .par_iter()
        .map(|&(a, b)| {
            let g = gamma_at_level(p, j + 1, &BigInt::from(a), &BigInt::from(b));
            let d = DPoint::d(g.r1.clone(), g.r2.clone());
            let fine = bilinear_inner(&fine_x, &fine_y, &d);
            let coarse = if a % step == 0 && b % step == 0 {
                coord_inner_left(x, y, &g)?
            } else {
                InnerValue::zero(p)
            };
            let diff = (fine.eval(theta)? - coarse.eval(theta)?).norm();
            let exact = fine == coarse;
            let msg = (!exact).then(|| format!("mismatch at {d:?}"));
            Ok((exact && diff <= tol, diff, msg))
        })
        .collect();
    let mut report = CompatReport {
        level: j,
        passed: true,
        points: pts.len(),
        max_real_discrepancy: 0.0,
        detail: String::new(),
    };
    for r in results {
        let (ok, diff, msg) = r?;
        report.max_real_discrepancy = report.max_real_discrepancy.max(diff.to_f64().unwrap_or(f64::NAN));
        if !ok && report.passed {
            report.passed = false;
            report.detail = msg.unwrap_or_else(|| "numeric discrepancy above tolerance".into());
        }
    }
    Ok(report)
}

/// `i(x · b) = i(x) · φ_j(b)`: the level `j` coordinate action followed by
/// refinement equals the module action of `φ_j(b)` on the refined vector.
pub fn compat_action_check(system: &DirectedAlgebraSystem, x: &RhoCoords, b: &AlgebraElement) -> Result<bool> {
    let j = x.level();
    let lhs = x.act_algebra(b)?.refine();
    let image = system.connecting_map(j, b)?;
    let fine = x.refine();
    let rhs_module = act_left_algebra(&image, &fine.to_module())?;
    let rhs = RhoCoords::from_module(&rhs_module, j + 1);
    Ok(rhs.as_ref() == Some(&lhs) && fine.act_algebra(&image)? == lhs && lhs.to_module() == rhs_module)
}

/// Basis vectors `ρ^(j)(χ_m ⊗ f)` for all residues.
pub fn basis_vectors(p: u32, j: u32, f: &crate::functions::RealFunction) -> Vec<RhoCoords> {
    let n = pow_p(p, 2 * j).to_u64().unwrap_or(0);
    (0..n).map(|m| RhoCoords::basis(p, j, &BigInt::from(m), f.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{AtomShape, RealFunction};
    use crate::phase::{PhasePolynomial, ThetaLaurent};

    const THETA: f64 = 0.5477;

    fn delta_at(p: u32, j: u32, a: i64, b: i64, c: PhasePolynomial) -> AlgebraElement {
        let g = gamma_at_level(p, j, &BigInt::from(a), &BigInt::from(b));
        AlgebraElement::from_terms(Multiplier::EtaD, p, std::iter::once((g, c)))
    }

    fn bumpy(p: u32) -> RealFunction {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let g = AtomShape::gaussian(r(2, 1), ThetaLaurent::linear(r(1, 4), r(1, 1)), ThetaLaurent::zero());
        RealFunction::unit_gaussian(p).add(&RealFunction::atom(p, g))
    }

    #[test]
    fn connecting_map_on_generators_and_words() {
        for p in [2u32, 3] {
            let sys = DirectedAlgebraSystem::new(p);
            for j in 0..3 {
                for which in [Generator::U, Generator::V] {
                    let img = sys.connecting_map(j, &generator_delta(p, j, which)).unwrap();
                    let pow = generator_delta(p, j + 1, which).power(i64::from(p)).unwrap();
                    assert_eq!(img, pow);
                }
                let unit = AlgebraElement::unit(p, Multiplier::EtaD);
                assert_eq!(sys.connecting_map(j, &unit).unwrap(), unit);
                let x = delta_at(p, j, -2, 3, PhasePolynomial::one(p))
                    .add(&delta_at(p, j, 1, 1, PhasePolynomial::one(p)))
                    .unwrap();
                assert_eq!(sys.connecting_map(j, &x).unwrap(), x);
            }
        }
    }

    #[test]
    fn tails_and_seminorm() {
        let p = 2;
        let sys = DirectedAlgebraSystem::new(p);
        let zero = AlgebraElement::zero(p, Multiplier::EtaD);
        let t0 = PredictableTail::generated(&sys, 0, zero, 2).unwrap();
        assert_eq!(seminorm_estimate(&sys, &t0, 3, THETA).unwrap(), 0.0);
        let unit = AlgebraElement::unit(p, Multiplier::EtaD);
        let t1 = PredictableTail::generated(&sys, 0, unit, 2).unwrap();
        assert!((seminorm_estimate(&sys, &t1, 4, THETA).unwrap() - 1.0).abs() < 1e-15);
        let u = generator_delta(p, 1, Generator::U);
        let t2 = PredictableTail::generated(&sys, 1, u.clone(), 3).unwrap();
        for x in &t2.stages {
            assert!((x.l1_norm(THETA).unwrap() - 1.0).abs() < 1e-15);
        }
        let bad = vec![u, generator_delta(p, 2, Generator::V)];
        assert!(PredictableTail::new(&sys, 1, 0, bad).is_err());
    }

    #[test]
    fn compat_inner_holds_and_detects_corruption() {
        let p = 2;
        let f = RealFunction::unit_gaussian(p);
        let x = RhoCoords::basis(p, 0, &BigInt::from(0), f.clone());
        let ok = compat_inner_check(&x, &x, 2, THETA, 1e-10, DirectedFault::None).unwrap();
        assert!(ok.passed, "{ok:?}");
        let bad = compat_inner_check(&x, &x, 2, THETA, 1e-10, DirectedFault::CorruptRefinement).unwrap();
        assert!(!bad.passed);

        let basis = basis_vectors(3, 1, &bumpy(3));
        let r = compat_inner_check(&basis[1], &basis[4], 1, THETA, 1e-10, DirectedFault::None).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn compat_action_for_generators() {
        for p in [2u32, 3] {
            let sys = DirectedAlgebraSystem::new(p);
            for j in 0..2 {
                for x in basis_vectors(p, j, &bumpy(p)) {
                    assert!(compat_action_check(&sys, &x, &AlgebraElement::unit(p, Multiplier::EtaD)).unwrap());
                    for which in [Generator::U, Generator::V] {
                        assert!(compat_action_check(&sys, &x, &generator_delta(p, j, which)).unwrap());
                    }
                }
            }
        }
    }
}
