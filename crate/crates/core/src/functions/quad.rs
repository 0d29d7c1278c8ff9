use num_complex::Complex;

use crate::scalar::{from_f64, Real};

/// Adaptive Simpson quadrature of a complex integrand on `[lo, hi]`.
pub fn adaptive_simpson<T, F>(f: F, lo: T, hi: T, tol: T) -> Complex<T>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let two = from_f64::<T>(2.0);
    let pieces = 64;
    let step = (hi - lo) / from_f64::<T>(pieces as f64);
    let local_tol = tol / from_f64::<T>(pieces as f64);
    let mut total = Complex::new(T::zero(), T::zero());
    for k in 0..pieces {
        let a = lo + step * from_f64::<T>(k as f64);
        let b = a + step;
        let m = (a + b) / two;
        let (fa, fm, fb) = (f(a), f(m), f(b));
        let whole = simpson(a, b, fa, fm, fb);
        total = total + refine(&f, a, b, fa, fm, fb, whole, local_tol, 48);
    }
    total
}

fn simpson<T: Real>(a: T, b: T, fa: Complex<T>, fm: Complex<T>, fb: Complex<T>) -> Complex<T> {
    (fa + fm * from_f64::<T>(4.0) + fb) * ((b - a) / from_f64::<T>(6.0))
}

#[allow(clippy::too_many_arguments)]
fn refine<T, F>(
    f: &F,
    a: T,
    b: T,
    fa: Complex<T>,
    fm: Complex<T>,
    fb: Complex<T>,
    whole: Complex<T>,
    tol: T,
    depth: u32,
) -> Complex<T>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let two = from_f64::<T>(2.0);
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = left + right - whole;
    if depth == 0 || err.norm() <= from_f64::<T>(15.0) * tol {
        return left + right + err / from_f64::<T>(15.0);
    }
    refine(f, a, m, fa, flm, fm, left, tol / two, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
}
