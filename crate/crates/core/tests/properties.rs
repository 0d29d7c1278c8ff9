use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use solenoid::algebra::{
    cocycle_check, eta, AlgebraElement, AlphaSequence, DPoint, GammaElement, Multiplier,
};
use solenoid::directed::{seminorm_estimate, DirectedAlgebraSystem, PredictableTail};
use solenoid::functions::{AtomShape, RealFunction};
use solenoid::heisenberg::{act_left, act_right, inner_left_table, inner_right_table, ModuleElement};
use solenoid::{Ball, PAdicRational, PhaseExponent, PhasePolynomial, ThetaLaurent, Valuation};

const THETA: f64 = 0.5477;

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3u32)]
}

fn padic(p: u32) -> impl Strategy<Value = PAdicRational> {
    (-60i64..60, 0u32..4).prop_map(move |(n, e)| PAdicRational::new(p, n, e))
}

fn gamma(p: u32) -> impl Strategy<Value = GammaElement> {
    (padic(p), padic(p)).prop_map(|(a, b)| GammaElement::new(a, b))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn algebra_element(p: u32, m: Multiplier) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((gamma(p), -3i64..4), 1..4).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(g, c)| (g, PhasePolynomial::rational(p, rat(c, 1))));
        AlgebraElement::from_terms(m.clone(), p, terms)
    })
}

fn module_element(p: u32) -> ModuleElement {
    let bump = AtomShape::gaussian(rat(3, 2), ThetaLaurent::linear(rat(1, 3), rat(1, 1)), ThetaLaurent::constant(rat(-1, 2)));
    let a = ModuleElement::elementary(Ball::new(PAdicRational::zero(p), 1), RealFunction::unit_gaussian(p));
    let b = ModuleElement::elementary(
        Ball::new(PAdicRational::new(p, 1, 1), 0),
        RealFunction::unit_gaussian(p).add(&RealFunction::atom(p, bump)),
    );
    a.add(&b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn padic_ring_laws((x, y, z) in prime().prop_flat_map(|p| (padic(p), padic(p), padic(p)))) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        prop_assert_eq!((&x + &y).to_rational(), x.to_rational() + y.to_rational());
    }

    #[test]
    fn valuation_is_additive((x, y) in prime().prop_flat_map(|p| (padic(p), padic(p)))) {
        match (x.vp(), y.vp()) {
            (Valuation::Finite(a), Valuation::Finite(b)) => prop_assert_eq!((&x * &y).vp(), Valuation::Finite(a + b)),
            _ => prop_assert_eq!((&x * &y).vp(), Valuation::Infinite),
        }
    }

    #[test]
    fn fractional_part_splits(x in prime().prop_flat_map(padic)) {
        let f = x.frac_p();
        prop_assert!((&x - &f).is_integer());
        prop_assert_eq!(f.frac_p(), f);
    }

    #[test]
    fn ball_translation_and_intersection(
        (c, s, x, y) in prime().prop_flat_map(|p| (padic(p), -2i64..3, padic(p), padic(p)))
    ) {
        let b = Ball::new(c.clone(), s);
        prop_assert!(b.contains(&c));
        prop_assert!(b.translate(&x).contains(&(&c + &x)));
        prop_assert_eq!(b.contains(&y), b.translate(&x).contains(&(&y + &x)));
        let other = Ball::new(y.clone(), s + 1);
        prop_assert_eq!(b.intersect(&other), other.intersect(&b));
    }

    #[test]
    fn multipliers_are_cocycles((x, y, z) in prime().prop_flat_map(|p| (gamma(p), gamma(p), gamma(p)))) {
        let p = x.p();
        for m in [Multiplier::EtaD, Multiplier::EtaBarPerp, Multiplier::Psi(AlphaSequence::theta_family(p))] {
            prop_assert!(cocycle_check(&m, &x, &y, &z));
        }
    }

    #[test]
    fn phase_text_round_trip(a in -40i64..40, b in -40i64..40, c in -40i64..40, d in 1i64..30) {
        let e = PhaseExponent::new(rat(a, d), rat(b, d), rat(c, d + 1));
        prop_assert_eq!(PhaseExponent::parse_text(&e.to_text()).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_is_associative(
        (a, b, c) in prime().prop_flat_map(|p| {
            let m = Multiplier::Psi(AlphaSequence::theta_family(p));
            (algebra_element(p, m.clone()), algebra_element(p, m.clone()), algebra_element(p, m))
        })
    ) {
        let lhs = a.convolve(&b).unwrap().convolve(&c).unwrap();
        let rhs = a.convolve(&b.convolve(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn involution_reverses_products(
        (a, b) in prime().prop_flat_map(|p| (algebra_element(p, Multiplier::EtaD), algebra_element(p, Multiplier::EtaD)))
    ) {
        let lhs = a.convolve(&b).unwrap().involution();
        let rhs = b.involution().convolve(&a.involution()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.involution().involution(), a);
    }

    #[test]
    fn projective_law_and_commutation(
        (d1, d2) in prime().prop_flat_map(|p| (gamma(p), gamma(p)))
    ) {
        let p = d1.p();
        let f = module_element(p);
        let (x1, x2) = (DPoint::d(d1.r1.clone(), d1.r2.clone()), DPoint::d(d2.r1.clone(), d2.r2.clone()));
        let lhs = act_left(&x1, &act_left(&x2, &f).unwrap()).unwrap();
        let w = PhasePolynomial::phase(p, eta(&x1, &x2).unwrap());
        prop_assert_eq!(lhs, act_left(&x1.add(&x2).unwrap(), &f).unwrap().scale(&w));

        let (e1, e2) = (DPoint::perp(d1.r1.clone(), d1.r2.clone()), DPoint::perp(d2.r1, d2.r2));
        let lhs = act_right(&act_right(&f, &e1).unwrap(), &e2).unwrap();
        let w = PhasePolynomial::phase(p, eta(&e1, &e2).unwrap());
        prop_assert_eq!(lhs, act_right(&f, &e1.add(&e2).unwrap()).unwrap().scale(&w));

        let lr = act_left(&x1, &act_right(&f, &e2).unwrap()).unwrap();
        let rl = act_right(&act_left(&x1, &f).unwrap(), &e2).unwrap();
        prop_assert_eq!(lr, rl);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn tables_are_hermitian(
        (p, d) in prime().prop_flat_map(|p| (Just(p), gamma(p)))
    ) {
        let f1 = module_element(p);
        let f2 = act_left(&DPoint::d(d.r1, d.r2), &ModuleElement::elementary(
            Ball::new(PAdicRational::zero(p), 0),
            RealFunction::unit_gaussian(p),
        )).unwrap();
        let radius = rat(2, 1);
        let l12 = inner_left_table(&f1, &f2, &radius, 2).unwrap();
        let l21 = inner_left_table(&f2, &f1, &radius, 2).unwrap();
        prop_assert_eq!(l21, l12.involution());
        let r12 = inner_right_table(&f1, &f2, &radius, 2).unwrap();
        let r21 = inner_right_table(&f2, &f1, &radius, 2).unwrap();
        prop_assert_eq!(r21, r12.involution());
    }

    #[test]
    fn seminorm_is_monotone_in_depth(
        (p, terms, extra) in prime().prop_flat_map(|p| {
            (Just(p), prop::collection::vec((-6i64..7, -6i64..7, -2i64..3), 1..4), 1usize..3)
        })
    ) {
        let terms = terms.into_iter().map(|(a, b, c)| {
            let g = GammaElement::new(PAdicRational::new(p, a, 1), PAdicRational::new(p, b, 1));
            (g, PhasePolynomial::rational(p, rat(c, 1)))
        });
        let x = AlgebraElement::from_terms(Multiplier::EtaD, p, terms);
        let sys = DirectedAlgebraSystem::new(p);
        let tail = PredictableTail::generated(&sys, 1, x, 1).unwrap();
        let shallow: f64 = seminorm_estimate(&sys, &tail, 2, THETA).unwrap();
        let deep: f64 = seminorm_estimate(&sys, &tail, 2 + extra, THETA).unwrap();
        prop_assert!(deep >= shallow);
    }
}
