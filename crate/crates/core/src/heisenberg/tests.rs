use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use super::*;
use crate::algebra::{eta, generator_point, DPoint, Generator};
use crate::functions::{adaptive_simpson, AtomShape, RealFunction};
use crate::padic::{Ball, PAdicRational};
use crate::phase::{PhaseExponent, PhasePolynomial, ThetaLaurent};

const THETA: f64 = 0.5477;

fn q(p: u32, s: &str) -> PAdicRational {
    PAdicRational::parse(p, s).unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn dpt(p: u32, a: &str, b: &str) -> DPoint {
    DPoint::d(q(p, a), q(p, b))
}

fn ppt(p: u32, a: &str, b: &str) -> DPoint {
    DPoint::perp(q(p, a), q(p, b))
}

fn bumpy(p: u32) -> RealFunction {
    let g = AtomShape::gaussian(
        r(3, 2),
        ThetaLaurent::linear(r(1, 3), r(1, 1)),
        ThetaLaurent::constant(r(-1, 2)),
    );
    RealFunction::unit_gaussian(p).add(&RealFunction::atom(p, g))
}

fn sample_element(p: u32) -> ModuleElement {
    let a = ModuleElement::elementary(Ball::new(q(p, "0"), 1), RealFunction::unit_gaussian(p));
    let b = ModuleElement::elementary(Ball::new(q(p, &format!("1/{p}")), 0), bumpy(p));
    a.add(&b)
}

fn phase(e: &PhaseExponent, p: u32) -> PhasePolynomial {
    PhasePolynomial::phase(p, e.clone())
}

#[test]
fn identity_action() {
    let f = sample_element(2);
    assert_eq!(act_left(&dpt(2, "0", "0"), &f).unwrap(), f);
    assert_eq!(act_right(&f, &ppt(2, "0", "0")).unwrap(), f);
}

#[test]
fn generator_actions_on_basis() {
    for p in [2u32, 3] {
        for j in 0..3u32 {
            let m = BigInt::from(p * p - 1).min(crate::padic::pow_p(p, 2 * j) - 1);
            let f = bumpy(p);
            let x = rho_j(p, j, &m, &f).unwrap();
            let u = generator_point(p, j, Generator::U);
            let got = act_left(&DPoint::d(u.r1.clone(), u.r2.clone()), &x).unwrap();
            let modulus = crate::padic::pow_p(p, 2 * j);
            let m1 = (&m - 1 + &modulus) % &modulus;
            let shift = ThetaLaurent::monomial(u.r1.to_rational(), 1);
            assert_eq!(got, rho_j(p, j, &m1, &f.translate(&shift)).unwrap());

            let v = generator_point(p, j, Generator::V);
            let got = act_left(&DPoint::d(v.r1.clone(), v.r2.clone()), &x).unwrap();
            let ph = PhaseExponent::rational(BigRational::new(m.clone(), modulus.clone()));
            let g = f.modulate(&ThetaLaurent::constant(v.r2.to_rational())).mul_phase(&ph);
            assert_eq!(got, rho_j(p, j, &m, &g).unwrap());
        }
    }
}

#[test]
fn projective_law_and_commutation() {
    let p = 3;
    let f = sample_element(p);
    let pts = [("1/3", "2"), ("-4/9", "1/3"), ("5", "-7/27")];
    for (a1, b1) in pts {
        for (a2, b2) in pts {
            let d1 = dpt(p, a1, b1);
            let d2 = dpt(p, a2, b2);
            let lhs = act_left(&d1, &act_left(&d2, &f).unwrap()).unwrap();
            let w = eta(&d1, &d2).unwrap();
            let rhs = act_left(&d1.add(&d2).unwrap(), &f).unwrap().scale(&phase(&w, p));
            assert_eq!(lhs, rhs);

            let e1 = ppt(p, a1, b1);
            let e2 = ppt(p, a2, b2);
            let lhs = act_right(&act_right(&f, &e1).unwrap(), &e2).unwrap();
            let w = eta(&e1, &e2).unwrap();
            let rhs = act_right(&f, &e1.add(&e2).unwrap()).unwrap().scale(&phase(&w, p));
            assert_eq!(lhs, rhs);

            let lr = act_left(&d1, &act_right(&f, &e2).unwrap()).unwrap();
            let rl = act_right(&act_left(&d1, &f).unwrap(), &e2).unwrap();
            assert_eq!(lr, rl);
        }
    }
}

#[test]
fn mixed_sides_rejected() {
    let f = sample_element(2);
    assert!(act_left(&ppt(2, "1", "0"), &f).is_err());
    assert!(act_right(&f, &dpt(2, "1", "0")).is_err());
    assert!(inner_left(&f, &f, &ppt(2, "1", "0")).is_err());
}

#[test]
fn vanishing_examples() {
    let p = 2;
    let g = RealFunction::unit_gaussian(p);
    let x = rho_j(p, 1, &BigInt::from(0), &g).unwrap();
    assert!(inner_left(&x, &x, &dpt(p, "1/8", "0")).unwrap().is_zero());
    assert!(inner_left(&x, &x, &dpt(p, "1/8", "3/8")).unwrap().is_zero());
    let y = rho_j(p, 1, &BigInt::from(3), &g).unwrap();
    assert!(inner_left(&x, &y, &dpt(p, "1/2", "1/2")).unwrap().is_zero());
    assert!(!inner_left(&x, &y, &dpt(p, "3/2", "1/2")).unwrap().is_zero());
}

#[test]
fn matching_points_reproduce_phase_and_integral() {
    let p = 2;
    let j = 1u32;
    let f1 = bumpy(p);
    let f2 = RealFunction::unit_gaussian(p);
    for (m1, m2) in [(0i64, 1i64), (1, 3), (3, 2)] {
        let x = RhoCoords::basis(p, j, &BigInt::from(m1), f1.clone());
        let y = RhoCoords::basis(p, j, &BigInt::from(m2), f2.clone());
        for k2 in [-3i64, 0, 1, 2] {
            let k1 = m2 - m1;
            let g = gamma_at_level(p, j, &BigInt::from(k1), &BigInt::from(k2));
            let d = DPoint::d(g.r1.clone(), g.r2.clone());
            let direct = inner_left(&x.to_module(), &y.to_module(), &d).unwrap();
            assert_eq!(direct, coord_inner_left(&x, &y, &g).unwrap());
            let val = direct.eval(THETA).unwrap();
            let s = k1 as f64 * THETA / 2.0;
            let c = k2 as f64 / 2.0;
            let integral = adaptive_simpson(
                |t: f64| {
                    let a = f1.eval(t, THETA).unwrap();
                    let b = f2.eval(t + s, THETA).unwrap();
                    Complex::from_polar(1.0, -2.0 * std::f64::consts::PI * t * c) * a * b.conj()
                },
                -12.0,
                12.0,
                1e-12,
            );
            let ph = Complex::from_polar(1.0, -2.0 * std::f64::consts::PI * (m1 * k2) as f64 / 4.0);
            assert!((val - ph * integral).norm() < 1e-9, "{m1} {m2} {k2}");
        }
    }
}

#[test]
fn left_table_is_hermitian_and_positive() {
    let p = 2;
    let f1 = sample_element(p);
    let f2 = rho_j(p, 1, &BigInt::from(2), &bumpy(p)).unwrap();
    let radius = r(4, 1);
    let t12 = inner_left_table(&f1, &f2, &radius, 3).unwrap();
    let t21 = inner_left_table(&f2, &f1, &radius, 3).unwrap();
    assert!(!t12.is_empty());
    assert_eq!(t21, t12.involution());

    let r12 = inner_right_table(&f1, &f2, &radius, 3).unwrap();
    let r21 = inner_right_table(&f2, &f1, &radius, 3).unwrap();
    assert!(!r12.is_empty());
    assert_eq!(r21, r12.involution());

    let zero = dpt(p, "0", "0");
    let v = inner_left(&f1, &f1, &zero).unwrap().eval(THETA).unwrap();
    assert!(v.re > 0.0 && v.im.abs() < 1e-12);
    let v = inner_right(&f1, &f1, &ppt(p, "0", "0")).unwrap().eval(THETA).unwrap();
    assert!(v.re > 0.0 && v.im.abs() < 1e-12);
}

#[test]
fn disjoint_supports_give_empty_table() {
    let p = 3;
    let g = RealFunction::unit_gaussian(p);
    let a = ModuleElement::elementary(Ball::new(q(p, "0"), 2), g.clone());
    let b = ModuleElement::elementary(Ball::new(q(p, "1"), 2), g);
    let t = inner_left_table(&a, &b, &r(1, 3), 0).unwrap();
    assert!(t.is_empty());
}

#[test]
fn refinement_and_coordinates() {
    let p = 2;
    let f = bumpy(p);
    let x = rho_j(p, 1, &BigInt::from(3), &f).unwrap();
    let expect = ModuleElement::elementary(
        Ball::new(q(p, "3/2"), 1),
        f.scale(&PhasePolynomial::scalar(crate::phase::QSqrtP::sqrt_p_pow(p, 1))),
    );
    assert_eq!(x, expect);
    assert_eq!(rho_j(p, 0, &BigInt::zero(), &f).unwrap(), ModuleElement::elementary(Ball::unit(p), f.clone()));
    assert!(rho_j(p, 1, &BigInt::from(4), &f).is_err());

    let c = RhoCoords::basis(p, 1, &BigInt::from(3), f.clone());
    let fine = c.refine();
    assert_eq!(fine.coords().len(), 2);
    assert!(fine.coords().contains_key(&BigInt::from(6)));
    assert!(fine.coords().contains_key(&BigInt::from(14)));
    assert_eq!(fine.to_module(), x);
    assert_eq!(RhoCoords::from_module(&x, 1), Some(c));
    assert_eq!(RhoCoords::from_module(&x, 0), None);
}

#[test]
fn coordinate_action_matches_module_action() {
    let p = 3;
    let j = 1;
    let f = bumpy(p);
    let x = RhoCoords::from_coords(
        p,
        j,
        vec![(BigInt::from(2), f.clone()), (BigInt::from(7), RealFunction::unit_gaussian(p))],
    );
    for (a, b) in [(1i64, 0i64), (0, 1), (-4, 5), (11, -2)] {
        let g = gamma_at_level(p, j, &BigInt::from(a), &BigInt::from(b));
        let direct = act_left(&DPoint::d(g.r1.clone(), g.r2.clone()), &x.to_module()).unwrap();
        assert_eq!(direct, x.act(&g).unwrap().to_module());
    }
}

#[test]
fn finite_stage_generators() {
    let p = 2;
    for j in 0..3 {
        let x = FiniteStageElement::elementary(p, j, &BigInt::from(1), bumpy(p));
        assert_eq!(x.act(Generator::U).act_inverse(Generator::U), x);
        assert_eq!(x.act(Generator::V).act_inverse(Generator::V), x);
        let uv = x.act(Generator::V).act(Generator::U);
        let vu = x.act(Generator::U).act(Generator::V);
        let n = crate::padic::pow_p(p, 2 * j);
        let w = PhaseExponent::new(BigRational::new(1.into(), n.clone()), BigRational::new(1.into(), n), BigRational::zero());
        let expect = FiniteStageElement::from_residues(
            p,
            j,
            vu.residues().iter().map(|(m, f)| (m.clone(), f.mul_phase(&w))).collect(),
        );
        assert_eq!(uv, expect);
    }
}

#[test]
fn psi_intertwines_generators() {
    for p in [2u32, 3] {
        for j in 0..2u32 {
            let n = crate::padic::pow_p(p, 2 * j);
            let mut m = BigInt::zero();
            while m < n {
                let x = FiniteStageElement::elementary(p, j, &m, bumpy(p));
                for which in [Generator::U, Generator::V] {
                    let g = generator_point(p, j, which);
                    let lhs = psi_map(&x.act(which));
                    let rhs = act_left(&DPoint::d(g.r1.clone(), g.r2.clone()), &psi_map(&x)).unwrap();
                    assert_eq!(lhs, rhs);
                }
                m += 1;
            }
        }
    }
}

#[test]
fn lattice_and_fourier_strategies_agree() {
    let p = 2;
    let j = 1;
    let g = RealFunction::unit_gaussian(p);
    for (m1, m2) in [(0i64, 0i64), (1, 0), (3, 1)] {
        let x = FiniteStageElement::elementary(p, j, &BigInt::from(m1), g.clone());
        let y = FiniteStageElement::elementary(p, j, &BigInt::from(m2), g.clone());
        for n in 0..3i64 {
            if finite_stage_vanishes(&x, &y, n) {
                assert!(finite_stage_fourier_coefficient(&x, &y, n, 1).is_zero());
                continue;
            }
            for k in 0..10 {
                let t = -0.45 + 0.1 * k as f64;
                let w = lattice_window(&x, t, THETA, 60.0);
                let a = finite_stage_inner_lattice(&x, &y, t, n, THETA, w).unwrap();
                let b = finite_stage_inner_fourier(&x, &y, t, n, THETA, 64).unwrap();
                assert!((a - b).norm() < 1e-10, "{m1} {m2} {n} {t}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn phi_of_psi_table_matches_lattice_sum() {
    let p = 2;
    let j = 1;
    let x = FiniteStageElement::elementary(p, j, &BigInt::from(1), bumpy(p));
    let y = FiniteStageElement::elementary(p, j, &BigInt::from(3), RealFunction::unit_gaussian(p));
    let table = inner_left_table(&psi_map(&x), &psi_map(&y), &r(30, 1), j).unwrap();
    assert!(table.entries.keys().all(|g| lattice_index(&g.r1, j).is_some()));
    for n in [-2i64, 2, 6] {
        for t in [0.0, 0.13, 0.71] {
            let w = lattice_window(&x, t, THETA, 60.0);
            let a = finite_stage_inner_lattice(&x, &y, t, n, THETA, w).unwrap();
            let b = phi_map(&table, j, n, t, THETA, 64).unwrap();
            assert!((a - b).norm() < 1e-9, "{n} {t}: {a} vs {b}");
        }
    }
}

#[test]
fn phi_trivial_cases() {
    let p = 2;
    let empty = InnerProductTable {
        side: crate::algebra::Side::D,
        p,
        radius: r(1, 1),
        denom_bound: 1,
        entries: Default::default(),
    };
    assert_eq!(phi_map(&empty, 1, 0, 0.3, THETA, 8).unwrap(), Complex::new(0.0, 0.0));
}

#[test]
fn pmrs_stage_checks() {
    let f = bumpy(2);
    assert!(verify_pmrs_stage(2, 0, &f, PmrsFault::None).unwrap().all_passed());
    let g = bumpy(3);
    assert!(verify_pmrs_stage(3, 1, &g, PmrsFault::None).unwrap().all_passed());
    let bad = verify_pmrs_stage(2, 1, &f, PmrsFault::PerturbActionPhase).unwrap();
    assert!(!bad.checks[0].passed);
    assert!(bad.checks[1].passed && bad.checks[2].passed);
}

#[test]
fn bimodule_associativity_numeric() {
    let p = 2;
    let f1 = rho_j(p, 1, &BigInt::from(1), &RealFunction::unit_gaussian(p)).unwrap();
    let f2 = sample_element(p);
    let f3 = rho_j(p, 1, &BigInt::from(2), &bumpy(p)).unwrap();
    let pts: Vec<(PAdicRational, f64)> = vec![(q(p, "0"), 0.1), (q(p, "1/2"), -0.4), (q(p, "3"), 0.8)];
    let mut errs = Vec::new();
    for radius in [3i64, 6] {
        let rr = r(radius, 1);
        let left = inner_left_table(&f1, &f2, &rr, 4).unwrap().eval(THETA).unwrap();
        let right = inner_right_table(&f2, &f3, &rr, 4).unwrap().eval(THETA).unwrap();
        let mut worst: f64 = 0.0;
        for (qq, t) in &pts {
            let a = apply_table_at(&left, crate::algebra::Side::D, &f3, qq, *t, THETA).unwrap();
            let b = apply_table_at(&right, crate::algebra::Side::DPerp, &f1, qq, *t, THETA).unwrap();
            worst = worst.max((a - b).norm());
        }
        errs.push(worst);
    }
    assert!(errs[1] < 1e-6 && errs[1] < errs[0], "{errs:?}");
}
