//! Central finite differences with one level of Richardson extrapolation.

/// d/dx f at `x` from the five-point stencil
/// (f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)) / (12 h),
/// i.e. the central difference at steps h and 2h combined through one
/// Richardson level. Truncation error O(h^4); the caller picks `step` to
/// balance that against round-off in f.
pub fn derivative<F>(f: F, x: f64, step: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    debug_assert!(step > 0.0, "step must be positive");
    let h = step;
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}
