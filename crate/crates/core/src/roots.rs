//! Bracketed scalar root finding.
//!
//! Every implicit quantity in this crate is the zero of a function that is
//! known to change sign on a bracket, so only guarded iterations are offered:
//! Brent's method (bisection safeguarding secant / inverse quadratic steps)
//! and geometric bracket expansion.

use crate::error::{NlsError, Result};

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub x_abs: f64,
    pub x_rel: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            x_abs: 1e-300,
            x_rel: 4.0 * f64::EPSILON,
            max_iter: 200,
        }
    }
}

/// Brent's method on `[a, b]`; `f(a)` and `f(b)` must not share a sign.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    let fa = f(a);
    let fb = f(b);
    brent_with_values(f, a, fa, b, fb, tol)
}

pub(crate) fn brent_with_values<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut fa: f64,
    mut b: f64,
    mut fb: f64,
    tol: Tolerance,
) -> Result<f64> {
    if fa.is_nan() || fb.is_nan() {
        return Err(NlsError::Convergence("NaN at bracket endpoint".into()));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NlsError::Convergence(format!(
            "no sign change on [{a}, {b}]: f = {fa}, {fb}"
        )));
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..tol.max_iter {
        if fb.signum() == fc.signum() {
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
        let tol1 = 2.0 * tol.x_rel * b.abs() + 0.5 * tol.x_abs;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if fb.is_nan() {
            return Err(NlsError::Convergence(format!("NaN at x = {b}")));
        }
    }
    Err(NlsError::Convergence(format!(
        "Brent did not converge in {} iterations",
        tol.max_iter
    )))
}

/// Starting from `lo`, steps `hi = lo + step * growth^k` until `f` changes
/// sign relative to `f(lo)`. Returns the bracket with endpoint values.
pub fn expand_upward<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    step: f64,
    growth: f64,
    max_steps: usize,
) -> Result<(f64, f64, f64, f64)> {
    let f_lo = f(lo);
    let mut a = lo;
    let mut fa = f_lo;
    let mut width = step;
    for _ in 0..max_steps {
        let b = lo + width;
        let fb = f(b);
        if fb.signum() != f_lo.signum() || fb == 0.0 {
            return Ok((a, fa, b, fb));
        }
        a = b;
        fa = fb;
        width *= growth;
    }
    Err(NlsError::Convergence(format!(
        "no sign change found above {lo} after {max_steps} expansions"
    )))
}

/// Like [`expand_upward`], mirrored: steps `lo = hi - step * growth^k`.
pub fn expand_downward<F: FnMut(f64) -> f64>(
    mut f: F,
    hi: f64,
    step: f64,
    growth: f64,
    max_steps: usize,
) -> Result<(f64, f64, f64, f64)> {
    let (a, fa, b, fb) = expand_upward(|x| f(-x), -hi, step, growth, max_steps)?;
    Ok((-b, fb, -a, fa))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_sqrt2() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, Tolerance::default()).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn brent_rejects_no_sign_change() {
        let err = brent(|x| x * x + 1.0, -1.0, 1.0, Tolerance::default()).unwrap_err();
        assert!(matches!(err, NlsError::Convergence(_)));
    }

    #[test]
    fn brent_flat_then_steep() {
        let r = brent(|x: f64| x.powi(9) - 1e-9, -1.0, 4.0, Tolerance::default()).unwrap();
        assert!((r - 0.1).abs() < 1e-12, "{r}");
    }

    #[test]
    fn expansion_finds_far_root() {
        let (a, _, b, _) = expand_upward(|x| x - 1e6, 0.0, 1.0, 2.0, 100).unwrap();
        assert!(a < 1e6 && 1e6 <= b);
        let (a, _, b, _) = expand_downward(|x| x + 37.0, 0.0, 1.0, 2.0, 100).unwrap();
        assert!(a <= -37.0 && -37.0 < b);
    }
}
