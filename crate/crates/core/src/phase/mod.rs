//! Exact phases `e^{2πi(a + bθ + c/θ)}`, their `Q(√p)`-linear combinations,
//! and Laurent and rational functions of a formal `θ`.

mod exponent;
mod laurent;
mod poly;
mod qsqrtp;
mod ratfun;

pub use exponent::PhaseExponent;
pub use laurent::ThetaLaurent;
pub use poly::PhasePolynomial;
pub use qsqrtp::QSqrtP;
pub use ratfun::{Poly, ThetaRationalFunction};

pub(crate) use exponent::mod_one;

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn e(a: BigRational, b: BigRational, c: BigRational) -> PhaseExponent {
        PhaseExponent::new(a, b, c)
    }

    #[test]
    fn exponent_addition() {
        let x = e(r(1, 4), r(1, 4), r(0, 1));
        let y = e(r(3, 4), r(0, 1), r(0, 1));
        assert_eq!(&x + &y, e(r(0, 1), r(1, 4), r(0, 1)));
        assert!(x.scale(&BigRational::zero()).is_trivial());
        let h = e(r(0, 1), r(1, 2), r(0, 1));
        assert_eq!(&h + &h, e(r(0, 1), r(1, 1), r(0, 1)));
    }

    #[test]
    fn triviality() {
        assert!(PhaseExponent::zero().is_trivial());
        assert!(e(r(1, 1), r(0, 1), r(0, 1)).is_trivial());
        assert!(!e(r(0, 1), r(1, 4), r(-1, 4)).is_trivial());
    }

    #[test]
    fn evaluation() {
        let z = e(r(1, 2), r(0, 1), r(0, 1)).eval(0.3f64).unwrap();
        assert!((z.re + 1.0).abs() < 1e-15 && z.im.abs() < 1e-15);
        let z = e(r(0, 1), r(1, 1), r(0, 1)).eval(0.25f64).unwrap();
        assert!(z.re.abs() < 1e-15 && (z.im - 1.0).abs() < 1e-15);
        let z = e(r(0, 1), r(0, 1), r(1, 1)).eval(2.0f64).unwrap();
        assert!((z.re + 1.0).abs() < 1e-15);
        assert!(e(r(0, 1), r(0, 1), r(1, 1)).eval(0.0f64).is_err());
        let z32 = e(r(1, 4), r(0, 1), r(0, 1)).eval(0.5f32).unwrap();
        assert!((z32.im - 1.0).abs() < 1e-6);
    }

    #[test]
    fn text_round_trip() {
        let x = e(r(3, 4), r(-2, 3), r(5, 1));
        assert_eq!(x.to_text(), "3/4;-2/3;5/1");
        assert_eq!(PhaseExponent::parse_text(&x.to_text()).unwrap(), x);
        assert!(PhaseExponent::parse_text("1/2;3").is_err());
    }

    #[test]
    fn sqrt_p_ring() {
        let a = QSqrtP::new(2, r(3, 1), r(1, 2));
        let prod = &a * &a.galois_conj();
        assert_eq!(prod, QSqrtP::rational(2, a.norm()));
        assert_eq!(a.norm(), r(9, 1) - r(2, 4));
        let s = QSqrtP::sqrt_p_pow(3, 1);
        assert_eq!(&s * &s, QSqrtP::int(3, 3));
        assert_eq!(QSqrtP::sqrt_p_pow(2, 3), QSqrtP::new(2, r(0, 1), r(2, 1)));
        assert_eq!(&QSqrtP::sqrt_p_pow(2, -1) * &QSqrtP::sqrt_p_pow(2, 1), QSqrtP::one(2));
        assert_eq!(&a * &a.inv().unwrap(), QSqrtP::one(2));
    }

    #[test]
    fn roots_of_unity_cancel() {
        for p in [2u32, 3, 5] {
            let n = p as i64;
            let sum = PhasePolynomial::from_terms(
                p,
                (0..n).map(|k| (PhaseExponent::rational(r(k, n)), QSqrtP::one(p))),
            );
            assert!(sum.is_zero(), "p = {p}");
            let shifted = PhasePolynomial::from_terms(
                p,
                (0..n).map(|k| {
                    (PhaseExponent::new(r(1 + k * n, n * n), r(1, 3), r(0, 1)), QSqrtP::one(p))
                }),
            );
            assert!(shifted.is_zero(), "p = {p}");
        }
        let i = PhasePolynomial::phase(2, PhaseExponent::rational(r(1, 4)));
        let minus_one = &i * &i;
        assert_eq!(minus_one, PhasePolynomial::rational(2, r(-1, 1)));
        assert_eq!(&minus_one + &PhasePolynomial::one(2), PhasePolynomial::zero(2));
    }

    #[test]
    fn normal_form_is_nested_across_levels() {
        let w = PhasePolynomial::phase(3, PhaseExponent::rational(r(2, 3)));
        let via_nine = PhasePolynomial::phase(3, PhaseExponent::rational(r(6, 9)));
        assert_eq!(w, via_nine);
        let mixed = &w + &PhasePolynomial::phase(3, PhaseExponent::rational(r(1, 9)));
        let again = PhasePolynomial::from_terms(3, mixed.terms().map(|(e, c)| (e.clone(), c.clone())));
        assert_eq!(mixed, again);
    }

    #[test]
    fn theta_fraction() {
        let t = ThetaRationalFunction::theta();
        let one = ThetaRationalFunction::constant(BigRational::one());
        let f = &t + &one;
        assert_eq!((&f / &f).unwrap().as_constant(), Some(BigRational::one()));
        let num = &(&t * &t) - &one;
        let den = &t - &one;
        let red = (&num / &den).unwrap();
        assert_eq!(red, f);
        assert!((&one / &ThetaRationalFunction::constant(BigRational::zero())).is_err());
    }

    #[test]
    fn laurent_split() {
        let x = ThetaLaurent::monomial(r(5, 4), 0)
            + ThetaLaurent::monomial(r(1, 2), 2)
            + ThetaLaurent::monomial(r(-1, 3), -1);
        let (lat, rest) = x.split_phase();
        assert_eq!(lat, e(r(1, 4), r(0, 1), r(-1, 3)));
        assert_eq!(rest, ThetaLaurent::monomial(r(1, 2), 2));
    }
}
