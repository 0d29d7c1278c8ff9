use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::element::act_left;
use super::inner::inner_left;
use super::rho::{gamma_at_level, rho_j, RhoCoords};
use crate::algebra::{generator_point, DPoint, Generator};
use crate::error::Result;
use crate::functions::RealFunction;
use crate::padic::pow_p;
use crate::phase::PhaseExponent;

/// Deliberate defects for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmrsFault {
    None,
    /// Adds `1/p^{2j+3}` to the phase of the predicted generator action.
    PerturbActionPhase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub p: u32,
    pub level: u32,
    pub checks: Vec<StageCheck>,
}

impl StageReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks at level `j` with basis `ρ^(j)(χ_m ⊗ f)`:
/// `closure` (generator actions stay in `V_j` with the predicted coordinates),
/// `vanishing` (`⟨V_j, V_j⟩` is zero at `(k1/p^ℓ, k2/p^ℓ)`, `ℓ ∈ {j+1, j+2}`,
/// `k1` a unit, `|k2| ≤ 2`), and `inclusion` (`V_j ⊂ V_{j+1}`).
pub fn verify_pmrs_stage(p: u32, j: u32, f: &RealFunction, fault: PmrsFault) -> Result<StageReport> {
    let modulus = pow_p(p, 2 * j);
    let residues: Vec<BigInt> = num_iter(&modulus);
    let basis: Vec<RhoCoords> = residues
        .iter()
        .map(|m| RhoCoords::basis(p, j, m, f.clone()))
        .collect();

    let mut closure = StageCheck::new("closure");
    for x in &basis {
        let fx = x.to_module();
        for which in [Generator::U, Generator::V] {
            let g = generator_point(p, j, which);
            let got = act_left(&DPoint::d(g.r1.clone(), g.r2.clone()), &fx)?;
            let mut predicted = x.act(&g)?;
            if fault == PmrsFault::PerturbActionPhase {
                let bump = PhaseExponent::rational(BigRational::new(
                    BigInt::one(),
                    pow_p(p, 2 * j + 3),
                ));
                predicted = RhoCoords::from_coords(
                    p,
                    j,
                    predicted.coords().iter().map(|(m, h)| (m.clone(), h.mul_phase(&bump))).collect(),
                );
            }
            closure.cases += 1;
            match RhoCoords::from_module(&got, j) {
                Some(c) if c == predicted => {}
                Some(_) => closure.fail(format!("{which:?} on {:?}: coordinates differ", x.coords().keys())),
                None => closure.fail(format!("{which:?} on {:?}: left V_j", x.coords().keys())),
            }
        }
    }

    let mut vanishing = StageCheck::new("vanishing");
    let modules: Vec<_> = basis.iter().map(|x| x.to_module()).collect();
    for l in [j + 1, j + 2] {
        let pl = pow_p(p, l);
        for k1 in num_iter(&pl) {
            if k1.is_multiple_of(&BigInt::from(p)) {
                continue;
            }
            for k2 in -2i64..=2 {
                let g = gamma_at_level(p, l, &k1, &BigInt::from(k2));
                let d = DPoint::d(g.r1, g.r2);
                for a in &modules {
                    for b in &modules {
                        vanishing.cases += 1;
                        if !inner_left(a, b, &d)?.is_zero() {
                            vanishing.fail(format!("nonzero at {d:?}"));
                        }
                    }
                }
            }
        }
    }

    let inclusion = check_inclusion(p, j, f)?;

    Ok(StageReport { p, level: j, checks: vec![closure, vanishing, inclusion] })
}

/// `V_j ⊂ V_{j+1}`: each `ρ^(j)(χ_m ⊗ f)` equals its refinement in the level
/// `j+1` basis and is recovered from it.
pub fn check_inclusion(p: u32, j: u32, f: &RealFunction) -> Result<StageCheck> {
    let mut inclusion = StageCheck::new("inclusion");
    for m in num_iter(&pow_p(p, 2 * j)) {
        inclusion.cases += 1;
        let direct = rho_j(p, j, &m, f)?;
        let refined = RhoCoords::basis(p, j, &m, f.clone()).refine();
        let ok = refined.to_module() == direct
            && RhoCoords::from_module(&direct, j + 1).as_ref() == Some(&refined);
        if !ok {
            inclusion.fail(format!("residue {m} not in V_{}", j + 1));
        }
    }
    Ok(inclusion)
}

fn num_iter(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut k = BigInt::from(0);
    while &k < n {
        out.push(k.clone());
        k += 1;
    }
    out
}

impl StageCheck {
    fn new(name: &str) -> Self {
        StageCheck { name: name.to_string(), passed: true, cases: 0, detail: String::new() }
    }

    fn fail(&mut self, msg: String) {
        if self.passed {
            self.detail = msg;
        }
        self.passed = false;
    }
}
