use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{RunConfig, Suite};
use super::report::{CheckResult, SuiteReport};
use crate::algebra::{
    cocycle_check, generator_delta, morita_fraction_check, morita_fraction_check_perturbed, AlgebraElement,
    AlphaSequence, DPoint, GammaElement, Generator, Multiplier, Side,
};
use crate::directed::{basis_vectors, compat_action_check, compat_inner_check, DirectedAlgebraSystem, DirectedFault};
use crate::error::Result;
use crate::functions::{adaptive_simpson, mrs_ball, AtomShape, RealFunction, TestFunctionQp};
use crate::heisenberg::{
    act_left, act_right, apply_table_at, coord_inner_left, finite_stage_fourier_coefficient,
    finite_stage_inner_fourier, finite_stage_inner_lattice, finite_stage_vanishes, gamma_at_level, inner_left,
    inner_left_table, inner_right_table, lattice_window, phi_map, psi_map, tail_envelope, check_inclusion,
    FiniteStageElement, ModuleElement, RhoCoords,
};
use crate::padic::{pow_p, Ball, PAdicRational};
use crate::phase::{PhaseExponent, PhasePolynomial, QSqrtP, ThetaLaurent};

/// Runs the configured suite after validating the configuration.
pub fn run_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let checks = match cfg.suite {
        Suite::Cocycle => cocycle(cfg),
        Suite::Algebra => algebra(cfg),
        Suite::Generators => generators(cfg),
        Suite::Morita => morita(cfg),
        Suite::Mrs => mrs(cfg),
        Suite::Vanishing => vanishing(cfg),
        Suite::Intertwine => intertwine(cfg),
        Suite::Poisson => poisson(cfg),
        Suite::Phi => phi(cfg),
        Suite::Bimodule => bimodule(cfg),
        Suite::Directed => directed(cfg),
    };
    let mut echo = cfg.clone();
    echo.levels = Some(cfg.level_range());
    echo.samples = Some(cfg.sample_count());
    Ok(SuiteReport::new(&echo, checks))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn levels(cfg: &RunConfig) -> Vec<u32> {
    let (lo, hi) = cfg.level_range();
    (lo..=hi).collect()
}

fn rng(cfg: &RunConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

fn random_point(rng: &mut ChaCha8Rng, p: u32, num: i64, max_exp: u32) -> PAdicRational {
    let n = rng.random_range(-num..=num);
    let k = rng.random_range(0..=max_exp);
    PAdicRational::new(p, n, k)
}

fn random_gamma(rng: &mut ChaCha8Rng, p: u32, num: i64, max_exp: u32) -> GammaElement {
    GammaElement::new(random_point(rng, p, num, max_exp), random_point(rng, p, num, max_exp))
}

/// `e^{-πt²}` plus a wider shifted atom; used where a generic test vector helps.
fn generic_function(p: u32) -> RealFunction {
    let g = AtomShape::gaussian(rat(3, 2), ThetaLaurent::linear(rat(1, 3), rat(1, 1)), ThetaLaurent::constant(rat(-1, 2)));
    RealFunction::unit_gaussian(p).add(&RealFunction::atom(p, g))
}

fn numeric_error(name: String, identity: &str, tol: f64, value: Result<f64>) -> CheckResult {
    match value {
        Ok(v) => CheckResult::numeric(name, identity, v, tol),
        Err(e) => CheckResult::error(name, identity, &e),
    }
}

fn exact_result(name: String, identity: &str, value: Result<bool>) -> CheckResult {
    match value {
        Ok(b) => CheckResult::exact(name, identity, b),
        Err(e) => CheckResult::error(name, identity, &e),
    }
}

fn cocycle(cfg: &RunConfig) -> Vec<CheckResult> {
    const ID: &str = "σ(x,y)σ(x+y,z) = σ(y,z)σ(x,y+z) for Ψ_α (θ family and a digit stream), η and η̄";
    let p = cfg.prime();
    let n = cfg.sample_count();
    if n == 0 {
        return Vec::new();
    }
    let digits = vec![1, 0, p - 1];
    let explicit = AlphaSequence::explicit(p, rat(2, 7), digits).expect("digits below p");
    let multipliers = [
        Multiplier::Psi(AlphaSequence::theta_family(p)),
        Multiplier::Psi(explicit.clone()),
        Multiplier::EtaD,
        Multiplier::EtaBarPerp,
    ];
    let mut r = rng(cfg);
    let triples: Vec<[GammaElement; 3]> = (0..n)
        .map(|_| [random_gamma(&mut r, p, 60, 4), random_gamma(&mut r, p, 60, 4), random_gamma(&mut r, p, 60, 4)])
        .collect();
    let mut out = vec![CheckResult::exact(
        "digit stream lies in Ξ_p",
        "p·α_{n+1} ≡ α_n (mod 1) for the explicit sequence",
        explicit.validate(12),
    )];
    out.par_extend(triples.par_iter().enumerate().map(|(i, [x, y, z])| {
        let ok = multipliers.iter().all(|m| cocycle_check(m, x, y, z));
        CheckResult::exact(format!("triple {i}"), ID, ok)
    }));
    out
}

fn random_coeff(rng: &mut ChaCha8Rng, p: u32) -> PhasePolynomial {
    let u = rat(rng.random_range(-3..=3), rng.random_range(1..=2));
    let v = if rng.random_bool(0.3) { rat(rng.random_range(-2..=2), 1) } else { BigRational::zero() };
    let c = QSqrtP::new(p, u, v);
    let c = if c.is_zero() { QSqrtP::one(p) } else { c };
    let pk = pow_p(p, rng.random_range(0..=2));
    let mut part = || BigRational::new(BigInt::from(rng.random_range(-4..=4)), pk.clone());
    let e = PhaseExponent::new(part(), part(), part());
    PhasePolynomial::monomial(c, e)
}

fn random_element(rng: &mut ChaCha8Rng, p: u32, m: &Multiplier) -> AlgebraElement {
    let size = rng.random_range(1..=4);
    let terms: Vec<_> = (0..size).map(|_| (random_gamma(rng, p, 8, 2), random_coeff(rng, p))).collect();
    AlgebraElement::from_terms(m.clone(), p, terms)
}

fn algebra(cfg: &RunConfig) -> Vec<CheckResult> {
    const ID: &str = "(f∗g)∗h = f∗(g∗h) and (f∗g)* = g*∗f*";
    let p = cfg.prime();
    let multipliers = [Multiplier::EtaD, Multiplier::EtaBarPerp, Multiplier::Psi(AlphaSequence::theta_family(p))];
    let mut r = rng(cfg);
    let cases: Vec<_> = (0..cfg.sample_count())
        .map(|i| {
            let m = &multipliers[i % multipliers.len()];
            (random_element(&mut r, p, m), random_element(&mut r, p, m), random_element(&mut r, p, m))
        })
        .collect();
    cases
        .par_iter()
        .enumerate()
        .map(|(i, (f, g, h))| {
            let run = || -> Result<bool> {
                let fg = f.convolve(g)?;
                let assoc = fg.convolve(h)? == f.convolve(&g.convolve(h)?)?;
                let star = fg.involution() == g.involution().convolve(&f.involution())?;
                Ok(assoc && star)
            };
            exact_result(format!("sample {i}"), ID, run())
        })
        .collect()
}

fn generators(cfg: &RunConfig) -> Vec<CheckResult> {
    let p = cfg.prime();
    let sys = DirectedAlgebraSystem::new(p);
    let mut out = Vec::new();
    for j in levels(cfg) {
        for which in [Generator::U, Generator::V] {
            let run = || -> Result<bool> {
                let fine = generator_delta(p, j + 1, which).power(i64::from(p))?;
                Ok(generator_delta(p, j, which) == fine && sys.connecting_map(j, &generator_delta(p, j, which))? == fine)
            };
            out.push(exact_result(
                format!("j={j} {which:?}_j = {which:?}_(j+1)^p"),
                "the level-j generator is the p-th power of the level-(j+1) generator",
                run(),
            ));
        }
        let run = || -> Result<bool> {
            let u = generator_delta(p, j, Generator::U);
            let v = generator_delta(p, j, Generator::V);
            let comm = u.convolve(&v)?.convolve(&u.power(-1)?)?.convolve(&v.power(-1)?)?;
            let n = pow_p(p, 2 * j);
            let want = PhaseExponent::new(BigRational::new(One::one(), n.clone()), BigRational::new(One::one(), n), BigRational::zero());
            let expected = AlgebraElement::unit(p, Multiplier::EtaD).scale(&PhasePolynomial::phase(p, want));
            Ok(comm == expected)
        };
        out.push(exact_result(
            format!("j={j} commutator"),
            "U V U* V* = e^{2πi(θ+1)/p^{2j}} with exponent (1/p^{2j}, 1/p^{2j}, 0)",
            run(),
        ));
    }
    out
}

fn morita(cfg: &RunConfig) -> Vec<CheckResult> {
    let p = cfg.prime();
    let mut out = Vec::new();
    for j in levels(cfg) {
        out.push(CheckResult::exact(
            format!("j={j}"),
            "β_{2j}/(p^{2j}β_{2j}+1) ≡ (θ+1)/p^{2j} (mod 1) as rational functions of θ",
            morita_fraction_check(p, j),
        ));
        out.push(CheckResult::exact(
            format!("j={j} negative control"),
            "perturbing β by 1/7 breaks the congruence",
            !morita_fraction_check_perturbed(p, j, &rat(1, 7)),
        ));
    }
    out
}

fn mrs(cfg: &RunConfig) -> Vec<CheckResult> {
    let p = cfg.prime();
    let mut out = Vec::new();
    let unit = TestFunctionQp::indicator(Ball::unit(p));
    let pieces: Vec<_> = (0..p)
        .map(|n| (Ball::new(PAdicRational::from_int(p, n), 1), PhasePolynomial::one(p)))
        .collect();
    let coeffs = unit.mrs_express(1);
    let oracle: Vec<PhasePolynomial> = (0..p * p)
        .map(|m| if m % p == 0 { PhasePolynomial::one(p) } else { PhasePolynomial::zero(p) })
        .collect();
    let pointwise = (0..4 * p * p).all(|k| {
        let q = PAdicRational::new(p, i64::from(k) - i64::from(p * p), 1);
        unit.eval(&q) == TestFunctionQp::from_terms(p, pieces.clone()).eval(&q)
    });
    out.push(CheckResult::exact(
        "refinement equation",
        "χ_{Z_p} = Σ_{n<p} χ_{n + pZ_p}",
        coeffs.as_deref() == Some(&oracle[..]) && pointwise,
    ));
    for j in levels(cfg) {
        let n = pow_p(p, 2 * j).to_u64().unwrap_or(0);
        let ok = (0..n).all(|m| {
            let b = mrs_ball(p, j, &BigInt::from(m));
            let f = TestFunctionQp::indicator(b);
            let step = pow_p(p, 2 * j + 1);
            let Some(c) = f.mrs_express(j + 1) else { return false };
            let expect: Vec<BigInt> = (0..p).map(|k| BigInt::from(m * u64::from(p)) + &step * k).collect();
            let ones = c.iter().enumerate().filter(|(_, x)| !x.is_zero());
            let support: Vec<BigInt> = ones.clone().map(|(i, _)| BigInt::from(i)).collect();
            let mut sorted = expect.clone();
            sorted.sort();
            support == sorted
                && ones.clone().all(|(_, x)| *x == PhasePolynomial::one(p))
                && TestFunctionQp::from_mrs(p, j + 1, &c) == f
        });
        out.push(CheckResult::exact(
            format!("j={j} scaling spaces"),
            "each scale-j ball indicator is the sum of its p children at scale j+1",
            ok,
        ));
        let ok = check_inclusion(p, j, &generic_function(p)).map(|c| c.passed);
        out.push(exact_result(
            format!("j={j} V_j in V_(j+1)"),
            "ρ^(j)(χ_m⊗f) = Σ_k p^{-1/2} ρ^(j+1)(χ_{pm+kp^{2j+1}}⊗f)",
            ok,
        ));
    }
    out
}

fn quad_integral(f1: &RealFunction, f2: &RealFunction, s: f64, c: f64, theta: f64, tol: f64) -> Complex<f64> {
    let tau = std::f64::consts::TAU;
    let reach = 14.0 + s.abs();
    adaptive_simpson(
        |t: f64| {
            let a = f1.eval(t, theta).unwrap_or_default();
            let b = f2.eval(t + s, theta).unwrap_or_default();
            Complex::from_polar(1.0, -tau * t * c) * a * b.conj()
        },
        -reach,
        reach,
        tol,
    )
}

fn vanishing(cfg: &RunConfig) -> Vec<CheckResult> {
    const ID: &str = "⟨ρ^(j)(χ_m1⊗f), ρ^(j)(χ_m2⊗f)⟩ vanishes off D^j and unless k1 ≡ m2−m1; otherwise it is e^{-2πi m1 k2/p^{2j}} times the Gaussian integral";
    let p = cfg.prime();
    let (j, _) = cfg.level_range();
    let theta = cfg.theta;
    let f = RealFunction::unit_gaussian(p);
    let modulus = pow_p(p, 2 * j).to_i64().unwrap_or(i64::MAX);
    let pairs: Vec<(i64, i64)> = (0..modulus).flat_map(|a| (0..modulus).map(move |b| (a, b))).collect();
    pairs
        .par_iter()
        .map(|&(m1, m2)| {
            let name = format!("j={j} pair ({m1},{m2})");
            let run = || -> Result<(bool, f64, usize)> {
                let x = RhoCoords::basis(p, j, &BigInt::from(m1), f.clone());
                let y = RhoCoords::basis(p, j, &BigInt::from(m2), f.clone());
                let (fx, fy) = (x.to_module(), y.to_module());
                let mut exact = true;
                let mut count = 0;
                for l in [j + 1, j + 2] {
                    let pl = pow_p(p, l).to_i64().unwrap_or(i64::MAX);
                    for k1 in (1..pl).filter(|k| k % i64::from(p) != 0) {
                        for k2 in -2..=2 {
                            let g = gamma_at_level(p, l, &BigInt::from(k1), &BigInt::from(k2));
                            count += 1;
                            exact &= inner_left(&fx, &fy, &DPoint::d(g.r1, g.r2))?.is_zero();
                        }
                    }
                }
                let matching = (m2 - m1).rem_euclid(modulus);
                for k1 in 0..modulus {
                    if k1 == matching {
                        continue;
                    }
                    for k2 in -2..=2 {
                        let g = gamma_at_level(p, j, &BigInt::from(k1), &BigInt::from(k2));
                        count += 1;
                        exact &= inner_left(&fx, &fy, &DPoint::d(g.r1, g.r2))?.is_zero();
                    }
                }
                let mut worst: f64 = 0.0;
                let scale = pow_p(p, j).to_f64().unwrap_or(f64::MAX);
                for k1 in [matching, matching - modulus] {
                    for k2 in -3..=3 {
                        let g = gamma_at_level(p, j, &BigInt::from(k1), &BigInt::from(k2));
                        let direct = inner_left(&fx, &fy, &DPoint::d(g.r1.clone(), g.r2.clone()))?;
                        count += 1;
                        exact &= direct == coord_inner_left(&x, &y, &g)?;
                        let phase = Complex::from_polar(
                            1.0,
                            -std::f64::consts::TAU * ((m1 * k2).rem_euclid(modulus) as f64) / modulus as f64,
                        );
                        let oracle = quad_integral(&f, &f, k1 as f64 * theta / scale, k2 as f64 / scale, theta, cfg.quad_tol);
                        worst = worst.max((direct.eval(theta)? - phase * oracle).norm());
                    }
                }
                Ok((exact, worst, count))
            };
            match run() {
                Ok((exact, worst, count)) => CheckResult::numeric(name, ID, worst, cfg.tol)
                    .require(exact, "an exact vanishing or phase identity failed")
                    .with_detail(format!("{count} points")),
                Err(e) => CheckResult::error(name, ID, &e),
            }
        })
        .collect()
}

fn intertwine(cfg: &RunConfig) -> Vec<CheckResult> {
    const ID: &str = "Ψ_j(W·x) = δ_{W_j}·Ψ_j(x) for W ∈ {U, V}";
    let p = cfg.prime();
    let f = generic_function(p);
    let mut cases = Vec::new();
    for j in levels(cfg) {
        let n = pow_p(p, 2 * j).to_u64().unwrap_or(0);
        for m in 0..n {
            for which in [Generator::U, Generator::V] {
                cases.push((j, m, which));
            }
        }
    }
    cases
        .par_iter()
        .map(|&(j, m, which)| {
            let x = FiniteStageElement::elementary(p, j, &BigInt::from(m), f.clone());
            let g = crate::algebra::generator_point(p, j, which);
            let run = || -> Result<bool> {
                Ok(psi_map(&x.act(which)) == act_left(&DPoint::d(g.r1.clone(), g.r2.clone()), &psi_map(&x))?)
            };
            exact_result(format!("j={j} m={m} {which:?}"), ID, run())
        })
        .collect()
}

fn sample_ts(cfg: &RunConfig) -> Vec<f64> {
    let mut r = rng(cfg);
    (0..cfg.sample_count()).map(|_| r.random::<f64>()).collect()
}

fn poisson(cfg: &RunConfig) -> Vec<CheckResult> {
    const ID: &str = "Σ_ℓ F1(Nt+ℓ,[ℓ]) conj F2(Nt+ℓ+nθ,[ℓ−n]) equals its Fourier series in t";
    let p = cfg.prime();
    let (j, _) = cfg.level_range();
    let theta = cfg.theta;
    let g = RealFunction::unit_gaussian(p);
    let n_res = pow_p(p, 2 * j).to_u64().unwrap_or(0);
    let all = FiniteStageElement::from_residues(p, j, (0..n_res).map(|m| (BigInt::from(m), g.clone())).collect());
    let ts = sample_ts(cfg);
    let mut cases = Vec::new();
    for n in 0..3i64 {
        for (i, &t) in ts.iter().enumerate() {
            cases.push((n, i, t));
        }
    }
    let mut out: Vec<CheckResult> = cases
        .par_iter()
        .map(|&(n, i, t)| {
            let w = lattice_window(&all, t, theta, 60.0);
            let value = (|| -> Result<f64> {
                let a = finite_stage_inner_lattice(&all, &all, t, n, theta, w)?;
                let b = finite_stage_inner_fourier(&all, &all, t, n, theta, cfg.fourier_range)?;
                Ok((a - b).norm())
            })();
            numeric_error(format!("n={n} t[{i}]={t:.6}"), ID, cfg.tol, value).with_detail(format!(
                "lattice ℓ ∈ [{}, {}], |k| ≤ {}",
                w.lo, w.hi, cfg.fourier_range
            ))
        })
        .collect();
    if n_res > 1 {
        let x = FiniteStageElement::elementary(p, j, &BigInt::from(0), g.clone());
        let y = FiniteStageElement::elementary(p, j, &BigInt::from(0), g);
        let vanishes = finite_stage_vanishes(&x, &y, 1)
            && (-3..=3).all(|k| finite_stage_fourier_coefficient(&x, &y, 1, k).is_zero());
        out.push(CheckResult::exact(
            "elementary tensors, n ≢ m1−m2",
            "the finite-stage inner product is 0 unless n ≡ m1−m2",
            vanishes,
        ));
    }
    out
}

fn random_atom(r: &mut ChaCha8Rng, p: u32) -> RealFunction {
    let widths = [rat(1, 2), rat(1, 1), rat(2, 1)];
    let width = widths[r.random_range(0..widths.len())].clone();
    let center = ThetaLaurent::linear(rat(r.random_range(-2..=2), 4), rat(r.random_range(-2..=2), 4));
    let freq = ThetaLaurent::constant(rat(r.random_range(-1..=1), 2));
    RealFunction::atom(p, AtomShape::gaussian(width, center, freq))
}

fn phi(cfg: &RunConfig) -> Vec<CheckResult> {
    const ID: &str = "Φ(⟨Ψ_j x, Ψ_j y⟩)(t, n) equals the finite-stage lattice sum";
    let p = cfg.prime();
    let (j, _) = cfg.level_range();
    let theta = cfg.theta;
    let modulus = pow_p(p, 2 * j).to_i64().unwrap_or(i64::MAX);
    let pj = pow_p(p, j).to_f64().unwrap_or(f64::MAX);
    let radius_f = cfg.radius.max(f64::from(cfg.fourier_range) / pj).ceil();
    let radius = BigRational::from_integer(BigInt::from(radius_f as i64));
    let mut r = rng(cfg);
    let draws: Vec<_> = (0..cfg.sample_count())
        .map(|_| {
            let m1 = r.random_range(0..modulus);
            let m2 = r.random_range(0..modulus);
            let f1 = random_atom(&mut r, p);
            let f2 = random_atom(&mut r, p);
            let t: f64 = r.random();
            (m1, m2, f1, f2, t)
        })
        .collect();
    draws
        .par_iter()
        .enumerate()
        .map(|(i, (m1, m2, f1, f2, t))| {
            let x = FiniteStageElement::elementary(p, j, &BigInt::from(*m1), f1.clone());
            let y = FiniteStageElement::elementary(p, j, &BigInt::from(*m2), f2.clone());
            let value = (|| -> Result<f64> {
                let table = inner_left_table(&psi_map(&x), &psi_map(&y), &radius, j)?;
                let mut worst: f64 = 0.0;
                let n0 = m1 - m2;
                for n in [n0, n0 + modulus, n0 + 1] {
                    let w = lattice_window(&x, *t, theta, 60.0);
                    let a = finite_stage_inner_lattice(&x, &y, *t, n, theta, w)?;
                    let b = phi_map(&table, j, n, *t, theta, cfg.fourier_range)?;
                    worst = worst.max((a - b).norm());
                }
                Ok(worst)
            })();
            numeric_error(format!("draw {i} m1={m1} m2={m2}"), ID, cfg.tol, value)
                .with_detail(format!("table radius {radius_f}, |k| ≤ {}", cfg.fourier_range))
        })
        .collect()
}

fn module_sample(p: u32) -> ModuleElement {
    let a = ModuleElement::elementary(Ball::new(PAdicRational::zero(p), 1), RealFunction::unit_gaussian(p));
    let b = ModuleElement::elementary(Ball::new(PAdicRational::new(p, 1, 1), 0), generic_function(p));
    a.add(&b)
}

fn bimodule(cfg: &RunConfig) -> Vec<CheckResult> {
    let p = cfg.prime();
    let theta = cfg.theta;
    let f = module_sample(p);
    let mut r = rng(cfg);
    let pts: Vec<_> = (0..cfg.sample_count())
        .map(|_| {
            let d = random_gamma(&mut r, p, 6, 2);
            let e1 = random_gamma(&mut r, p, 6, 2);
            let e2 = random_gamma(&mut r, p, 6, 2);
            (d, e1, e2)
        })
        .collect();
    let mut out: Vec<CheckResult> = pts
        .par_iter()
        .enumerate()
        .map(|(i, (d, e1, e2))| {
            let run = || -> Result<bool> {
                let d = DPoint::d(d.r1.clone(), d.r2.clone());
                let e1 = DPoint::perp(e1.r1.clone(), e1.r2.clone());
                let e2 = DPoint::perp(e2.r1.clone(), e2.r2.clone());
                let commute =
                    act_left(&d, &act_right(&f, &e1)?)? == act_right(&act_left(&d, &f)?, &e1)?;
                let w = crate::algebra::eta(&e1, &e2)?;
                let composed = act_right(&act_right(&f, &e1)?, &e2)?
                    == act_right(&f, &e1.add(&e2)?)?.scale(&PhasePolynomial::phase(p, w));
                Ok(commute && composed)
            };
            exact_result(
                format!("sample {i}"),
                "δ_d·(F·δ_e) = (δ_d·F)·δ_e and (F·δ_e1)·δ_e2 = η̄(e1,e2) F·δ_(e1+e2)",
                run(),
            )
        })
        .collect();

    let f1 = crate::heisenberg::rho_j(p, 1, &BigInt::from(1), &RealFunction::unit_gaussian(p)).expect("residue in range");
    let f2 = module_sample(p);
    let f3 = crate::heisenberg::rho_j(p, 1, &BigInt::from(2 % (p * p)), &generic_function(p)).expect("residue in range");
    let full = cfg.radius;
    let half = full / 2.0;
    let mut pr = rng(cfg);
    let eval_pts: Vec<(PAdicRational, f64)> = (0..5)
        .map(|_| (random_point(&mut pr, p, 4, 1), pr.random_range(-1.0..1.0)))
        .collect();
    let assoc = |radius: f64| -> Result<f64> {
        let rr = BigRational::from_float(radius).unwrap_or_else(BigRational::one);
        let left = inner_left_table(&f1, &f2, &rr, cfg.denom_bound)?.eval(theta)?;
        let right = inner_right_table(&f2, &f3, &rr, cfg.denom_bound)?.eval(theta)?;
        let mut worst: f64 = 0.0;
        for (q, t) in &eval_pts {
            let a = apply_table_at(&left, Side::D, &f3, q, *t, theta)?;
            let b = apply_table_at(&right, Side::DPerp, &f1, q, *t, theta)?;
            worst = worst.max((a - b).norm());
        }
        Ok(worst)
    };
    const ID: &str = "⟨F1,F2⟩_A·F3 = F1·⟨F2,F3⟩_B at sampled points";
    let check = match (assoc(half), assoc(full)) {
        (Ok(coarse), Ok(fine)) => {
            let tail = tail_envelope(&f1, &f2, Side::D, full, theta).max(tail_envelope(&f2, &f3, Side::DPerp, full, theta));
            CheckResult::numeric(format!("associativity R={full}"), ID, fine, 1e-6)
                .require(fine < coarse || fine == 0.0, "no improvement under doubled radius")
                .with_detail(format!("R={half}: {coarse:.3e}; tail envelope at R={full}: {tail:.3e}"))
        }
        (Err(e), _) | (_, Err(e)) => CheckResult::error("associativity", ID, &e),
    };
    out.push(check);
    out
}

fn directed(cfg: &RunConfig) -> Vec<CheckResult> {
    let p = cfg.prime();
    let theta = cfg.theta;
    let sys = DirectedAlgebraSystem::new(p);
    let f = generic_function(p);
    let mut out = Vec::new();
    for j in levels(cfg) {
        let basis = basis_vectors(p, j, &f);
        let pairs: Vec<(usize, usize)> =
            (0..basis.len()).flat_map(|a| (0..basis.len()).map(move |b| (a, b))).collect();
        out.par_extend(pairs.par_iter().map(|&(a, b)| {
            let name = format!("inner j={j} pair ({a},{b})");
            const ID: &str = "⟨i(x), i(y)⟩_{j+1} = ψ_j(⟨x, y⟩_j) for |r| ≤ 1";
            match compat_inner_check(&basis[a], &basis[b], 1, theta, 1e-10, DirectedFault::None) {
                Ok(r) => CheckResult::numeric(name, ID, r.max_real_discrepancy, 1e-10)
                    .require(r.passed, &r.detail)
                    .with_detail(format!("{} points", r.points)),
                Err(e) => CheckResult::error(name, ID, &e),
            }
        }));
        let elems = [
            ("unit", AlgebraElement::unit(p, Multiplier::EtaD)),
            ("U", generator_delta(p, j, Generator::U)),
            ("V", generator_delta(p, j, Generator::V)),
        ];
        out.par_extend(basis.par_iter().enumerate().flat_map_iter(|(m, x)| {
            let sys = &sys;
            elems.iter().map(move |(label, b)| {
                exact_result(
                    format!("action j={j} m={m} b={label}"),
                    "i(x·b) = i(x)·φ_j(b)",
                    compat_action_check(sys, x, b),
                )
            })
        }));
        let control = compat_inner_check(&basis[0], &basis[0], 1, theta, 1e-10, DirectedFault::CorruptRefinement);
        out.push(exact_result(
            format!("inner j={j} negative control"),
            "a corrupted refinement coefficient is detected",
            control.map(|r| !r.passed),
        ));
    }
    out
}
