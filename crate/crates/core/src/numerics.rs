//! Scalar kernels shared by the models: bracketed root finding, Legendre
//! polynomials and central differences.

use crate::error::{Error, Result};

/// Convergence controls for [`solve_bracketed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    pub rel_tol: f64,
    /// Absolute tolerance in the units of the unknown.
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl RootConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_iter: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::InvalidParameter { name: "rel_tol", value: rel_tol, reason: "must be > 0" });
        }
        if !(abs_tol > 0.0) {
            return Err(Error::InvalidParameter { name: "abs_tol", value: abs_tol, reason: "must be > 0" });
        }
        if max_iter == 0 {
            return Err(Error::InvalidParameter { name: "max_iter", value: 0.0, reason: "must be >= 1" });
        }
        Ok(RootConfig { rel_tol, abs_tol, max_iter })
    }
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { rel_tol: 1e-12, abs_tol: 1e-18, max_iter: 200 }
    }
}

/// A converged root together with the final bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub f_x: f64,
    /// Final bracket `(lo, hi)`; `x` is one of its ends.
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Brent's method on `[lo, hi]`.
///
/// The bracket is never lost: every iterate keeps a sign change between the
/// best point `b` and the contrapoint `c`, and the returned `x` has the
/// smaller residual of the two. Stops once `|c − b| ≤ max(abs_tol, rel_tol·|b|)`
/// or `f(b) == 0`.
pub fn solve_bracketed<F>(mut f: F, lo: f64, hi: f64, cfg: &RootConfig) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() || fb.is_nan() || fa * fb > 0.0 {
        return Err(Error::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }
    if fa == 0.0 {
        return Ok(Root { x: a, f_x: 0.0, bracket: (a, a), iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, f_x: 0.0, bracket: (b, b), iterations: 0 });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=cfg.max_iter {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol = 0.5 * cfg.abs_tol.max(cfg.rel_tol * b.abs());
        let half = 0.5 * (c - b);
        if half.abs() <= tol || fb == 0.0 {
            let bracket = if fb == 0.0 { (b, b) } else { (b.min(c), b.max(c)) };
            return Ok(Root { x: b, f_x: fb, bracket, iterations: iter });
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when only two points.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * half * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::domain(format!("function returned NaN at x = {b:e}")));
        }
    }
    Err(Error::MaxIterExceeded { max_iter: cfg.max_iter, last: b })
}

/// Geometric scan for a sign change starting at `lo`.
///
/// Probes `lo, lo + step, lo + step(1 + growth), …` and returns the first
/// sub-interval whose ends differ in sign (or touch a zero). Gives up once
/// the probe passes `lo + max_span`.
pub fn expand_bracket<F>(mut f: F, lo: f64, step: f64, growth: f64, max_span: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    if !(step > 0.0) {
        return Err(Error::InvalidParameter { name: "step", value: step, reason: "must be > 0" });
    }
    if !(growth > 1.0) {
        return Err(Error::InvalidParameter { name: "growth", value: growth, reason: "must be > 1" });
    }
    let limit = lo + max_span;
    let mut a = lo;
    let mut fa = f(a);
    let mut h = step;
    loop {
        let b = (a + h).min(limit);
        let fb = f(b);
        if fa == 0.0 || fb == 0.0 || fa * fb < 0.0 {
            return Ok((a, b));
        }
        if b >= limit {
            return Err(Error::NoSignChange { lo, hi: limit, f_lo: fa, f_hi: fb });
        }
        a = b;
        fa = fb;
        h *= growth;
    }
}

/// Defaults for [`expand_bracket`]: growth factor 2, span 10⁴ initial steps.
pub const BRACKET_GROWTH: f64 = 2.0;
pub const BRACKET_SPAN_STEPS: f64 = 1e4;

/// Legendre polynomial Pₙ(x) by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(Error::domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    Ok(legendre_unchecked(n, x))
}

fn legendre_unchecked(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// P₀(x) … P_{n_max}(x) in one pass.
pub fn legendre_table(n_max: usize, x: f64) -> Result<Vec<f64>> {
    if !(x.abs() <= 1.0) {
        return Err(Error::domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(1.0);
    if n_max >= 1 {
        p.push(x);
    }
    for k in 1..n_max {
        let kf = k as f64;
        p.push(((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0));
    }
    Ok(p)
}

/// Central difference (f(x+h) − f(x−h)) / 2h.
pub fn central_diff<F>(mut f: F, x: f64, h: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn sqrt_two() {
        let r = solve_bracketed(|x| x * x - 2.0, 1.0, 2.0, &RootConfig::default()).unwrap();
        assert_relative_eq!(r.x, 2f64.sqrt(), max_relative = 1e-12);
        assert!((r.x - 1.4142135624).abs() < 1e-10);
    }

    #[test]
    fn half_pi() {
        let r = solve_bracketed(f64::cos, 1.0, 2.0, &RootConfig::default()).unwrap();
        assert!((r.x - FRAC_PI_2).abs() < 1e-11);
        assert!((r.x - 1.5707963268).abs() < 1e-10);
    }

    #[test]
    fn no_sign_change() {
        let err = solve_bracketed(|x| x - 5.0, 0.0, 1.0, &RootConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn exact_root_at_end() {
        let r = solve_bracketed(|x| x, 0.0, 1.0, &RootConfig::default()).unwrap();
        assert_eq!(r.x, 0.0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn iteration_limit() {
        let cfg = RootConfig::new(1e-15, 1e-300, 2).unwrap();
        let err = solve_bracketed(|x| x.powi(3) - 2.0, 0.0, 5.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::MaxIterExceeded { max_iter: 2, .. }));
    }

    #[test]
    fn superlinear_on_smooth_function() {
        let r = solve_bracketed(|x| x.exp() - 3.0, 0.0, 4.0, &RootConfig::default()).unwrap();
        assert_relative_eq!(r.x, 3f64.ln(), max_relative = 1e-12);
        assert!(r.iterations < 15, "took {} iterations", r.iterations);
    }

    #[test]
    fn bad_root_config() {
        assert!(RootConfig::new(0.0, 1e-9, 10).is_err());
        assert!(RootConfig::new(1e-9, -1.0, 10).is_err());
        assert!(RootConfig::new(1e-9, 1e-9, 0).is_err());
    }

    #[test]
    fn bracket_for_linear() {
        let (a, b) = expand_bracket(|x| x - 3.0, 0.0, 1.0, 2.0, 1e4).unwrap();
        assert!(a <= 3.0 && 3.0 <= b);
    }

    #[test]
    fn bracket_for_positive_function_fails() {
        let err = expand_bracket(|x| 1.0 + x * x, 0.0, 1.0, 2.0, 1e4).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn bracket_rejects_bad_step() {
        assert!(expand_bracket(|x| x, 0.0, 0.0, 2.0, 1.0).is_err());
        assert!(expand_bracket(|x| x, 0.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(0, 0.3).unwrap(), 1.0);
        assert!((legendre(3, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((legendre(2, 0.5).unwrap() + 0.125).abs() < 1e-15);
        assert!(legendre(2, 1.5).is_err());
        let table = legendre_table(10, -0.37).unwrap();
        for (n, p) in table.iter().enumerate() {
            assert_eq!(*p, legendre(n, -0.37).unwrap());
        }
    }

    #[test]
    fn legendre_parity_at_minus_one() {
        for n in 0..40 {
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((legendre(n, -1.0).unwrap() - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn central_diff_values() {
        assert_relative_eq!(central_diff(|x| x * x, 3.0, 1e-6), 6.0, max_relative = 1e-6);
        assert!((central_diff(f64::sin, 0.0, 1e-6) - 1.0).abs() < 1e-9);
    }

    proptest::proptest! {
        #[test]
        fn legendre_recurrence_residual(x in -1.0f64..=1.0) {
            let p = legendre_table(101, x).unwrap();
            for n in 1..=100usize {
                let nf = n as f64;
                let res = (nf + 1.0) * p[n + 1] - (2.0 * nf + 1.0) * x * p[n] + nf * p[n - 1];
                proptest::prop_assert!(res.abs() < 1e-13, "n = {n}, residual = {res}");
            }
        }

        #[test]
        fn central_diff_exact_on_quadratics(
            a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0, x in -5.0f64..5.0,
        ) {
            let h = 0.25;
            let d = central_diff(|t| a * t * t + b * t + c, x, h);
            let exact = 2.0 * a * x + b;
            proptest::prop_assert!((d - exact).abs() <= 1e-12 * (1.0 + exact.abs() + a.abs() * x.abs()));
        }

        #[test]
        fn brent_keeps_bracket_and_tolerance(root in -50.0f64..50.0, k in 0.1f64..10.0) {
            let f = |x: f64| (x - root) * (1.0 + k * (x - root).powi(2));
            let cfg = RootConfig::default();
            let r = solve_bracketed(f, root - 3.7, root + 11.0, &cfg).unwrap();
            let (lo, hi) = r.bracket;
            proptest::prop_assert!(lo <= r.x && r.x <= hi);
            proptest::prop_assert!(hi - lo <= cfg.abs_tol.max(cfg.rel_tol * r.x.abs()) * (1.0 + 1e-12));
            proptest::prop_assert!(r.f_x.abs() <= f(lo).abs() && r.f_x.abs() <= f(hi).abs());
            proptest::prop_assert!(f(lo) * f(hi) <= 0.0);
        }
    }
}
