//! Numerical quadrature used by oracles and trajectory evaluation.
//!
//! Composite Simpson covers smooth integrands on fixed panels; the adaptive
//! variant refines until a local Richardson estimate meets the tolerance.
//! Integrands with kinks should be split at the kinks by the caller.

use num_complex::Complex64;

/// Composite Simpson rule with `panels` subintervals (rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2) + panels % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

/// Composite Simpson rule for complex-valued integrands.
pub fn simpson_complex<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize) -> Complex64 {
    let n = panels.max(2) + panels % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(a + k as f64 * h) * w;
    }
    acc * (h / 3.0)
}

/// Adaptive Simpson to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_step(f, a, b, fa, fb, fm, whole, tol, 40)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, fm, flm, left, tol / 2.0, depth - 1)
        + adaptive_step(f, m, b, fm, fb, frm, right, tol / 2.0, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_integrates_polynomials_exactly() {
        // Simpson is exact through cubics.
        let got = simpson(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 8);
        let want = (81.0 / 4.0 - 9.0 + 3.0) - (1.0 / 4.0 - 1.0 - 1.0);
        assert!((got - want).abs() <= 1e-12);
    }

    #[test]
    fn simpson_handles_oscillatory_integrands() {
        let got = simpson(f64::sin, 0.0, PI, 1 << 12);
        assert!((got - 2.0).abs() <= 1e-12);
        let gotc = simpson_complex(|x| num_complex::Complex64::cis(x), 0.0, PI, 1 << 12);
        assert!((gotc.re - 0.0).abs() <= 1e-12);
        assert!((gotc.im - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn adaptive_simpson_meets_tolerance_on_peaked_integrands() {
        let f = |x: f64| (-x * x).exp();
        let got = adaptive_simpson(&f, -8.0, 8.0, 1e-12);
        assert!((got - PI.sqrt()).abs() <= 1e-10);
    }
}
