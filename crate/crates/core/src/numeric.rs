//! Derivative-free one-dimensional solvers shared by the geometric modules.

use crate::error::{Error, Result};

/// Iteration cap for interval bisection.
pub const BISECTION_MAX_ITER: usize = 200;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Bisection on a sign change of `f` over `[lo, hi]`.
///
/// Runs until the bracket can no longer be split in `f64` and returns the
/// bracket end with the smaller residual. Infinite values at the ends are
/// accepted as long as their signs differ.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::NoConvergence("residual is NaN at the bracket ends"));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoConvergence("bracket has no sign change"));
    }
    for _ in 0..max_iter {
        let mid = a + 0.5 * (b - a);
        if mid == a || mid == b {
            return Ok(if fa.abs() <= fb.abs() { a } else { b });
        }
        let fm = f(mid);
        if fm.is_nan() {
            return Err(Error::NoConvergence("residual is NaN inside the bracket"));
        }
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    Err(Error::NoConvergence("bisection iteration cap reached"))
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max<F>(mut f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if c == d {
            break;
        }
    }
    0.5 * (a + b)
}

/// Ternary search for the minimum of a convex `f` whose minimizer lies near
/// `center`; the bracket `center ± step` is grown until it encloses the
/// minimum.
pub fn convex_min<F>(mut f: F, center: f64, step: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut c = center;
    let mut h = step.abs().max(tol);
    let mut fc = f(c);
    for _ in 0..BISECTION_MAX_ITER {
        let fl = f(c - h);
        let fr = f(c + h);
        if fl >= fc && fr >= fc {
            let (mut lo, mut hi) = (c - h, c + h);
            while hi - lo > tol {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if f(m1) <= f(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
                if m1 == lo && m2 == hi {
                    break;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        if fl < fr {
            c -= h;
            fc = fl;
        } else {
            c += h;
            fc = fr;
        }
        h *= 2.0;
    }
    Err(Error::NoConvergence("convex minimum bracket did not close"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, BISECTION_MAX_ITER).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bisect_accepts_infinite_ends() {
        let r = bisect(
            |x: f64| if x <= 0.0 { f64::INFINITY } else { 1.0 - x },
            0.0,
            3.0,
            BISECTION_MAX_ITER,
        )
        .unwrap();
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bisect_rejects_same_sign() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, BISECTION_MAX_ITER),
            Err(Error::NoConvergence(_))
        ));
    }

    #[test]
    fn bisect_reports_iteration_cap() {
        assert!(bisect(|x| x - 0.3, 0.0, 1.0, 5).is_err());
    }

    #[test]
    fn golden_max_of_cosine() {
        let x = golden_max(|t: f64| (t - 0.4).cos(), -1.5, 1.5, 1e-12);
        assert!((x - 0.4).abs() < 1e-7);
    }

    #[test]
    fn convex_min_grows_bracket() {
        let x = convex_min(|t| (t - 37.0).abs() + 0.1 * (t - 37.0).powi(2), 0.0, 1.0, 1e-12).unwrap();
        assert!((x - 37.0).abs() < 1e-9);
    }
}
