//! Adaptive Simpson quadrature for the distribution integrals.

/// Integrate `f` over `[a, b]` with absolute tolerance `tol`.
///
/// Endpoints where `f` is not finite (unbounded densities) are nudged
/// inward by a relative epsilon before evaluation.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    let eval = |x: f64| -> f64 {
        let y = f(x);
        if y.is_finite() {
            y
        } else {
            let nudge = 1e-9 * (b - a);
            let x2 = if x <= a + nudge {
                a + nudge
            } else if x >= b - nudge {
                b - nudge
            } else {
                x
            };
            let y2 = f(x2);
            if y2.is_finite() {
                y2
            } else {
                0.0
            }
        }
    };
    let m = 0.5 * (a + b);
    let fa = eval(a);
    let fm = eval(m);
    let fb = eval(b);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&eval, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
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
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        // Simpson is exact for cubics.
        let f = |x: f64| 3.0 * x * x;
        let v = adaptive_simpson(&f, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn integrates_exponential() {
        let f = |x: f64| x.exp();
        let v = adaptive_simpson(&f, 0.0, 1.0, 1e-10);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn empty_interval_is_zero() {
        let f = |_: f64| 1.0;
        assert_eq!(adaptive_simpson(&f, 1.0, 1.0, 1e-9), 0.0);
        assert_eq!(adaptive_simpson(&f, 2.0, 1.0, 1e-9), 0.0);
    }
}
