use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::*;
use crate::padic::{char_integral, Ball, PAdicRational};
use crate::phase::{PhaseExponent, PhasePolynomial, ThetaLaurent};

fn q(p: u32, s: &str) -> PAdicRational {
    PAdicRational::parse(p, s).unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ball(p: u32, c: &str, j: i64) -> Ball {
    Ball::new(q(p, c), j)
}

fn ind(p: u32, c: &str, j: i64) -> TestFunctionQp {
    TestFunctionQp::indicator(ball(p, c, j))
}

#[test]
fn translation_examples() {
    assert_eq!(ind(2, "0", 0).translate(&q(2, "1/2")), ind(2, "1/2", 0));
    let f = ind(3, "1/3", 1).add(&ind(3, "2", 2));
    assert_eq!(f.translate(&q(3, "5/9")).translate(&q(3, "-5/9")), f);
    assert_eq!(ind(2, "1", 1).translate(&q(2, "1")), ind(2, "0", 1));
}

#[test]
fn character_multiplication() {
    let f = ind(2, "0", 0);
    assert_eq!(f.mul_char(&q(2, "0")), f);
    let g = f.mul_char(&q(2, "1/2"));
    let expect = ind(2, "0", 1).add(&ind(2, "1", 1).scale(&PhasePolynomial::rational(2, r(-1, 1))));
    assert_eq!(g, expect);
    assert!(g.integrate().is_zero());
    assert!(char_integral(&Ball::unit(2), &q(2, "1/2")).is_zero());
}

#[test]
fn dilation_examples() {
    assert_eq!(ind(2, "0", 0).dilate(), ind(2, "0", 1));
    assert_eq!(ind(2, "0", 0).dilate().dilate(), ind(2, "0", 2));
    assert_eq!(ind(3, "1/3", 0).dilate(), ind(3, "1", 1));
}

#[test]
fn integrals() {
    assert_eq!(ind(5, "0", 0).integrate(), PhasePolynomial::one(5));
    assert_eq!(ind(2, "0", 2).integrate(), PhasePolynomial::rational(2, r(1, 4)));
    let diff = ind(2, "0", 1).add(&ind(2, "1", 1).scale(&PhasePolynomial::rational(2, r(-1, 1))));
    assert!(diff.integrate().is_zero());
}

#[test]
fn normalization_coarsens_sibling_families() {
    let pieces = ind(3, "0", 1).add(&ind(3, "1", 1)).add(&ind(3, "2", 1));
    assert_eq!(pieces, ind(3, "0", 0));
    let overlapping = TestFunctionQp::from_terms(
        2,
        vec![
            (ball(2, "0", 0), PhasePolynomial::one(2)),
            (ball(2, "1", 1), PhasePolynomial::one(2)),
        ],
    );
    let expect = TestFunctionQp::from_terms(
        2,
        vec![
            (ball(2, "0", 1), PhasePolynomial::one(2)),
            (ball(2, "1", 1), PhasePolynomial::rational(2, r(2, 1))),
        ],
    );
    assert_eq!(overlapping, expect);
}

#[test]
fn mrs_coordinates() {
    let c = ind(2, "0", 0).mrs_express(1).unwrap();
    let ones: Vec<usize> = c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i).collect();
    assert_eq!(ones, vec![0, 2]);
    assert!(c.iter().filter(|v| !v.is_zero()).all(|v| *v == PhasePolynomial::one(2)));
    for p in [2u32, 3] {
        for j in 0..3u32 {
            let n = (p as usize).pow(2 * j);
            for m in 0..n {
                let basis = TestFunctionQp::indicator(mrs_ball(p, j, &BigInt::from(m)));
                let coords = basis.mrs_express(j).unwrap();
                for (k, v) in coords.iter().enumerate() {
                    assert_eq!(v.is_zero(), k != m);
                }
                assert_eq!(TestFunctionQp::from_mrs(p, j, &coords), basis);
                let finer = basis.mrs_express(j + 1).unwrap();
                assert_eq!(finer.iter().filter(|v| !v.is_zero()).count(), p as usize);
            }
        }
    }
    assert!(ind(2, "0", 2).mrs_express(1).is_none());
    assert!(ind(2, "1/8", 3).mrs_express(1).is_none());
}

#[test]
fn atom_transforms() {
    let g = RealFunction::unit_gaussian(2);
    let id = g.transform(&ThetaLaurent::zero(), &ThetaLaurent::zero(), &BigRational::one());
    assert_eq!(id, g);
    let s = ThetaLaurent::monomial(r(1, 2), 1);
    let shifted = g.translate(&s);
    let shape = shifted.atoms().keys().next().unwrap();
    assert_eq!(shape.center, -&s);
    let atom = AtomShape::gaussian(r(3, 1), ThetaLaurent::linear(r(1, 1), r(1, 1)), ThetaLaurent::constant(r(2, 1)));
    let f = RealFunction::atom(2, atom).dilate(&r(1, 2));
    let shape = f.atoms().keys().next().unwrap();
    assert_eq!(shape.width, r(3, 4));
    assert_eq!(shape.center, ThetaLaurent::linear(r(2, 1), r(2, 1)));
    assert_eq!(shape.freq, ThetaLaurent::constant(r(1, 1)));
}

#[test]
fn translation_matches_pointwise_evaluation() {
    let atom = AtomShape::gaussian(r(1, 2), ThetaLaurent::linear(r(1, 3), r(-1, 1)), ThetaLaurent::linear(r(1, 4), r(2, 1)));
    let f = RealFunction::atom(3, atom).scale(&PhasePolynomial::phase(3, PhaseExponent::rational(r(1, 9))));
    let s = ThetaLaurent::linear(r(1, 2), r(3, 1)) + ThetaLaurent::monomial(r(1, 5), -1);
    let g = f.translate(&s).modulate(&ThetaLaurent::monomial(r(1, 3), -1));
    let theta = 0.5477f64;
    for t in [-1.3, 0.0, 0.4, 2.2] {
        let direct = f.eval(t + s.eval(theta), theta).unwrap()
            * crate::scalar::cis_turns(t * (1.0 / 3.0) / theta);
        let via = g.eval(t, theta).unwrap();
        assert!((direct - via).norm() < 1e-13, "t = {t}");
    }
}

fn quad_overlap(f: &RealFunction, g: &RealFunction, s: f64, c: f64, theta: f64) -> num_complex::Complex<f64> {
    adaptive_simpson(
        |t| {
            crate::scalar::cis_turns(-t * c)
                * f.eval(t, theta).unwrap()
                * g.eval(t + s, theta).unwrap().conj()
        },
        -12.0,
        12.0,
        1e-12,
    )
}

#[test]
fn overlap_closed_form_examples() {
    let g = RealFunction::unit_gaussian(2);
    let zero = ThetaLaurent::zero();
    let v = overlap_integral(&g, &g, &zero, &zero, 0.5477f64).unwrap();
    assert!((v.re - 0.5f64.sqrt()).abs() < 1e-14 && v.im.abs() < 1e-14);
    let oracle = quad_overlap(&g, &g, 0.0, 0.0, 0.5477);
    assert!((oracle.re - 0.7071067811865476).abs() < 1e-10);
    let one = ThetaLaurent::constant(BigRational::one());
    let v = overlap_integral(&g, &g, &zero, &one, 0.5477f64).unwrap();
    let expect = (-std::f64::consts::PI / 2.0).exp() / 2f64.sqrt();
    assert!((v.re - expect).abs() < 1e-14 && v.im.abs() < 1e-14);
    let mut prev = f64::INFINITY;
    for s in [1i64, 2, 4] {
        let sl = ThetaLaurent::constant(BigRational::from_integer(s.into()));
        let v = overlap_integral(&g, &g, &sl, &zero, 0.5477f64).unwrap().norm();
        let bound = (-std::f64::consts::PI * (s * s) as f64 / 2.0).exp();
        assert!(v <= bound + 1e-15 && v < prev);
        let oracle = quad_overlap(&g, &g, s as f64, 0.0, 0.5477).norm();
        assert!((v - oracle).abs() < 1e-10);
        prev = v;
    }
}

#[test]
fn overlap_f32_agrees_with_f64() {
    let g = RealFunction::unit_gaussian(2);
    let s = ThetaLaurent::monomial(r(1, 1), 1);
    let c = ThetaLaurent::constant(r(1, 2));
    let a = overlap_integral(&g, &g, &s, &c, 0.5477f32).unwrap();
    let b = overlap_integral(&g, &g, &s, &c, 0.5477f64).unwrap();
    assert!((a.re as f64 - b.re).abs() < 1e-5 && (a.im as f64 - b.im).abs() < 1e-5);
}
