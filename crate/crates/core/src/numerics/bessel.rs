//! Modified Bessel function of the first kind, order zero.
//!
//! `I0` shows up in the angular integral of a Gaussian attraction around a
//! circular wall: integrating `exp(2ar cos phi)` over a full turn gives
//! `2 pi I0(2ar)`. The plain and exponentially-scaled forms are both
//! provided; the scaled one is what keeps large-argument wall potentials
//! representable.

/// Arguments at or below this use the power series; above it the large-x
/// asymptotic expansion. Both branches are at machine precision there
/// (the asymptotic branch alone is only ~2e-12 accurate at x = 12).
const SERIES_CUTOFF: f64 = 16.0;

/// I0(x), relative accuracy around 1e-15.
///
/// Even in x. Overflows to `f64::INFINITY` for |x| beyond ~713, following
/// IEEE semantics of `exp`.
pub fn bessel_i0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_CUTOFF {
        i0_series(ax)
    } else {
        ax.exp() * i0_asymptotic_tail(ax)
    }
}

/// Exponentially scaled form `exp(-|x|) * I0(x)`.
///
/// Stays in (0, 1] for all finite x, so products like
/// `exp(-(r-a)^2) * i0_scaled(2ar)` never overflow.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_CUTOFF {
        (-ax).exp() * i0_series(ax)
    } else {
        i0_asymptotic_tail(ax)
    }
}

/// Power series sum_k (x^2/4)^k / (k!)^2. All terms positive, numerically
/// stable for any x, cost grows with x.
fn i0_series(ax: f64) -> f64 {
    let q = 0.25 * ax * ax;
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut k = 0u32;
    loop {
        k += 1;
        term *= q / ((k as f64) * (k as f64));
        sum += term;
        if term <= sum * f64::EPSILON || !term.is_finite() {
            return sum;
        }
    }
}

/// The asymptotic series of I0(x)/(e^x/sqrt(2 pi x)) divided by e^x, i.e.
/// I0(x) ~ e^x * tail(x). Truncated at the smallest term.
fn i0_asymptotic_tail(ax: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut k = 0u32;
    loop {
        k += 1;
        let kf = k as f64;
        let next = term * (2.0 * kf - 1.0) * (2.0 * kf - 1.0) / (8.0 * kf * ax);
        if next >= term {
            break; // divergent tail reached
        }
        term = next;
        sum += term;
        if term <= sum * f64::EPSILON {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * ax).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: plain term-by-term power series, valid for all x.
    fn i0_oracle(x: f64) -> f64 {
        let q = 0.25 * x * x;
        let mut sum = 1.0;
        let mut term = 1.0;
        for k in 1..2000u32 {
            term *= q / ((k as f64) * (k as f64));
            sum += term;
            if term < sum * 1e-18 {
                break;
            }
        }
        sum
    }

    #[test]
    fn zero_argument() {
        assert_eq!(bessel_i0(0.0), 1.0);
    }

    #[test]
    fn series_reference_points() {
        // Frozen from the power-series oracle (cross-checked against mpmath).
        assert!((bessel_i0(1.0) - 1.266_065_877_752_008_3).abs() < 1e-14);
        assert!((bessel_i0(5.0) - 27.239_871_823_604_447).abs() / 27.24 < 1e-14);
    }

    #[test]
    fn matches_oracle_across_branches() {
        let mut x = 0.1;
        while x < 300.0 {
            let rel = (bessel_i0(x) - i0_oracle(x)).abs() / i0_oracle(x);
            assert!(rel < 1e-13, "x = {x}: rel err {rel:e}");
            x *= 1.31;
        }
    }

    #[test]
    fn even_in_x() {
        for &x in &[0.3, 1.7, 12.0, 40.0] {
            assert_eq!(bessel_i0(x), bessel_i0(-x));
            assert_eq!(bessel_i0_scaled(x), bessel_i0_scaled(-x));
        }
    }

    #[test]
    fn at_least_one() {
        let mut x = 0.0;
        while x < 700.0 {
            assert!(bessel_i0(x) >= 1.0, "x = {x}");
            x += 13.7;
        }
    }

    #[test]
    fn overflow_is_infinity() {
        assert!(bessel_i0(800.0).is_infinite());
        assert!(bessel_i0(800.0) > 0.0);
    }

    #[test]
    fn scaled_form_stays_finite() {
        for &x in &[20.0, 100.0, 1800.0, 1.0e6] {
            let s = bessel_i0_scaled(x);
            assert!(s.is_finite() && s > 0.0, "x = {x}");
            // compare against e^-x * I0 where the plain form still works
            if x < 700.0 {
                let rel = (s - (-x).exp() * i0_oracle(x)).abs() / s;
                assert!(rel < 1e-13, "x = {x}: rel err {rel:e}");
            }
        }
        // leading asymptotic order: 1/sqrt(2 pi x)
        let x = 1800.0;
        let lead = 1.0 / (2.0 * std::f64::consts::PI * x).sqrt();
        assert!((bessel_i0_scaled(x) - lead).abs() / lead < 1e-3);
    }
}
