//! Bracketed scalar root finding: bisection with secant/inverse-quadratic
//! acceleration in the style of Brent. Convergence is judged on |g(x)|,
//! and the bracket is maintained throughout, so the result always lies
//! inside the initial interval.

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// g(root) at termination.
    pub residual: f64,
    pub iterations: usize,
}

/// Find x in [lo, hi] with |g(x)| <= tol, given g(lo) and g(hi) of
/// opposite sign.
pub fn find_root<G>(g: G, lo: f64, hi: f64, tol: f64) -> Result<RootResult>
where
    G: Fn(f64) -> f64,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance {tol} must be > 0")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut fa = g(a);
    let mut fb = g(b);
    if fa == 0.0 {
        return Ok(RootResult {
            root: a,
            residual: 0.0,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(RootResult {
            root: b,
            residual: 0.0,
            iterations: 0,
        });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket {
            lo,
            hi,
            g_lo: fa,
            g_hi: fb,
        });
    }

    // c is the previous bracket endpoint opposite b; b holds the best guess.
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=MAX_ITER {
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
        if fb.abs() <= tol {
            return Ok(RootResult {
                root: b,
                residual: fb,
                iterations: iter,
            });
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 1e-300;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 {
            // Interval has collapsed to machine precision.
            if fb.abs() <= tol {
                return Ok(RootResult {
                    root: b,
                    residual: fb,
                    iterations: iter,
                });
            }
            return Err(Error::RootNotConverged {
                iterations: iter,
                residual: fb.abs(),
                tol,
            });
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt secant (a == c) or inverse quadratic interpolation.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0)),
                    (q0 - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let accept = 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min(e.abs() * q.abs());
            if accept {
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
        fb = g(b);
    }

    Err(Error::RootNotConverged {
        iterations: MAX_ITER,
        residual: fb.abs(),
        tol,
    })
}
