//! Adaptive Simpson quadrature with a running error estimate.

use crate::error::{Error, Result};

/// Maximum bisection depth before the integrator gives up on an interval.
const MAX_DEPTH: usize = 60;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate (sum of accepted local Richardson residuals).
    pub error_estimate: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

struct Adapt<'f> {
    f: &'f dyn Fn(f64) -> f64,
    evaluations: usize,
    error_sum: f64,
    /// First interval that hit MAX_DEPTH without meeting its tolerance.
    failed_at: Option<(f64, f64)>,
}

impl Adapt<'_> {
    fn eval(&mut self, x: f64) -> f64 {
        self.evaluations += 1;
        (self.f)(x)
    }

    /// Classic adaptive Simpson on [a, b] with cached endpoint/midpoint
    /// values; `whole` is the Simpson estimate over the full interval.
    #[allow(clippy::too_many_arguments)]
    fn run(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm);
        let frm = self.eval(rm);
        let left = (m - a) * (fa + 4.0 * flm + fm) / 6.0;
        let right = (b - m) * (fm + 4.0 * frm + fb) / 6.0;
        let delta = left + right - whole;

        // |delta|/15 estimates the error of the refined value.
        if delta.abs() <= 15.0 * tol {
            self.error_sum += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        if depth >= MAX_DEPTH {
            if self.failed_at.is_none() {
                self.failed_at = Some((a, b));
            }
            self.error_sum += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        self.run(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
            + self.run(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
    }
}

/// Integrate `f` over [lo, hi] to absolute tolerance `tol`.
///
/// Adaptive Simpson with the usual 1/15 Richardson acceptance test and
/// per-interval tolerance halving. Fails with `QuadratureNotConverged`
/// when some subinterval still misses its share of `tol` at depth 60.
pub fn integrate<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::InvalidInput(format!(
            "integration bounds [{lo}, {hi}] must be finite with lo <= hi"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance {tol} must be > 0")));
    }
    if lo == hi {
        f(lo);
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 1,
        });
    }

    let mut ctx = Adapt {
        f: &f,
        evaluations: 0,
        error_sum: 0.0,
        failed_at: None,
    };
    let m = 0.5 * (lo + hi);
    let fa = ctx.eval(lo);
    let fm = ctx.eval(m);
    let fb = ctx.eval(hi);
    let whole = (hi - lo) * (fa + 4.0 * fm + fb) / 6.0;
    let value = ctx.run(lo, hi, fa, fm, fb, whole, tol, 0);

    if let Some((a, b)) = ctx.failed_at {
        return Err(Error::QuadratureNotConverged {
            max_depth: MAX_DEPTH,
            lo: a,
            hi: b,
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate: ctx.error_sum,
        evaluations: ctx.evaluations,
    })
}
