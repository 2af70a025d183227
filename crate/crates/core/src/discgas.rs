//! Classical ideal gas in a disc of radius a whose wall carries a
//! Gaussian attraction.
//!
//! A wall element at angle phi attracts a particle at radius r with
//! -(sigma/a) exp(-d^2) per unit length; integrating around the rim gives
//! the closed form U(r) = -2 pi sigma exp(-r^2 - a^2) I0(2 a r). The
//! canonical pressure is the reduced quantity
//!     P = d/da ln int_0^a r exp(-beta U(r)) dr,
//! in which the momentum factor and angular constants cancel. The model
//! has exactly two knobs: a and the product beta*sigma.

use crate::error::{Error, Result};
use crate::numerics::{bessel_i0_scaled, integrate, QuadratureResult};

/// Disc radius and coupling beta*sigma (the only combination in which
/// temperature and wall density enter).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscParams {
    pub radius: f64,
    pub beta_sigma: f64,
}

impl DiscParams {
    pub fn new(radius: f64, beta_sigma: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "radius {radius} must be positive and finite"
            )));
        }
        if !beta_sigma.is_finite() || beta_sigma < 0.0 {
            return Err(Error::InvalidInput(format!(
                "beta_sigma {beta_sigma} must be >= 0 and finite"
            )));
        }
        Ok(Self { radius, beta_sigma })
    }
}

/// Pressure sampled along a radius grid at one coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureCurve {
    /// (a, P(a)) pairs, ascending in a.
    pub points: Vec<(f64, f64)>,
    pub beta_sigma: f64,
    pub fd_step: f64,
}

impl PressureCurve {
    /// Radii where the pressure changes sign, located by linear
    /// interpolation between neighboring grid points.
    pub fn zero_crossings(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for w in self.points.windows(2) {
            let ((a0, p0), (a1, p1)) = (w[0], w[1]);
            if p0 == 0.0 {
                out.push(a0);
            } else if p0.signum() != p1.signum() {
                out.push(a0 + (a1 - a0) * p0 / (p0 - p1));
            }
        }
        out
    }
}

/// Wall potential per unit sigma: U(r)/sigma = -2 pi e^{-r^2-a^2} I0(2ar),
/// evaluated through the scaled Bessel form
/// -2 pi e^{-(r-a)^2} [e^{-2ar} I0(2ar)] so large a*r never overflows.
pub fn wall_potential(r: f64, a: f64) -> f64 {
    debug_assert!(r >= 0.0 && r <= a, "need 0 <= r <= a");
    let d = r - a;
    -2.0 * std::f64::consts::PI * (-d * d).exp() * bessel_i0_scaled(2.0 * a * r)
}

/// Radial configuration integral int_0^a r exp(-beta U(r)) dr.
pub fn partition_integral(params: DiscParams, tol: f64) -> Result<QuadratureResult> {
    let a = params.radius;
    let bs = params.beta_sigma;
    integrate(|r| r * (-bs * wall_potential(r, a)).exp(), 0.0, a, tol)
}

/// Canonical pressure d/da ln Z_r(a) by the five-point central
/// difference. Both the upper integration limit and the wall potential
/// move with a.
pub fn pressure(params: DiscParams, fd_step: f64, tol: f64) -> Result<f64> {
    let a = params.radius;
    if fd_step.is_nan() || fd_step <= 0.0 || fd_step >= a / 10.0 {
        return Err(Error::InvalidInput(format!(
            "fd_step {fd_step} must satisfy 0 < fd_step < a/10 = {}",
            a / 10.0
        )));
    }
    let lnz = |aa: f64| -> Result<f64> {
        let z = partition_integral(DiscParams::new(aa, params.beta_sigma)?, tol)?;
        Ok(z.value.ln())
    };
    let h = fd_step;
    Ok(
        (lnz(a - 2.0 * h)? - 8.0 * lnz(a - h)? + 8.0 * lnz(a + h)? - lnz(a + 2.0 * h)?)
            / (12.0 * h),
    )
}

/// Pressure curves over a uniform radius grid, one per coupling.
pub fn pressure_scan(
    a_min: f64,
    a_max: f64,
    steps: usize,
    beta_sigmas: &[f64],
    fd_step: f64,
    tol: f64,
) -> Result<Vec<PressureCurve>> {
    scan_impl(a_min, a_max, steps, beta_sigmas, fd_step, tol, 1)
}

/// Like [`pressure_scan`] with grid points evaluated on up to `threads`
/// OS threads. Output is identical to the sequential scan.
pub fn pressure_scan_parallel(
    a_min: f64,
    a_max: f64,
    steps: usize,
    beta_sigmas: &[f64],
    fd_step: f64,
    tol: f64,
    threads: usize,
) -> Result<Vec<PressureCurve>> {
    scan_impl(
        a_min,
        a_max,
        steps,
        beta_sigmas,
        fd_step,
        tol,
        threads.max(1),
    )
}

fn scan_impl(
    a_min: f64,
    a_max: f64,
    steps: usize,
    beta_sigmas: &[f64],
    fd_step: f64,
    tol: f64,
    threads: usize,
) -> Result<Vec<PressureCurve>> {
    if steps < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 scan steps, got {steps}"
        )));
    }
    if a_min.is_nan() || a_max.is_nan() || a_min <= 0.0 || a_max <= a_min {
        return Err(Error::InvalidInput(format!(
            "need 0 < a_min < a_max, got [{a_min}, {a_max}]"
        )));
    }
    if beta_sigmas.is_empty() {
        return Err(Error::InvalidInput("no couplings given".into()));
    }
    let da = (a_max - a_min) / (steps - 1) as f64;
    let grid: Vec<f64> = (0..steps).map(|i| a_min + da * i as f64).collect();

    beta_sigmas
        .iter()
        .map(|&bs| {
            let points = if threads <= 1 || steps < 2 * threads {
                grid.iter()
                    .map(|&a| Ok((a, pressure(DiscParams::new(a, bs)?, fd_step, tol)?)))
                    .collect::<Result<Vec<_>>>()?
            } else {
                let chunk = steps.div_ceil(threads);
                std::thread::scope(|scope| {
                    let handles: Vec<_> = grid
                        .chunks(chunk)
                        .map(|part| {
                            scope.spawn(move || {
                                part.iter()
                                    .map(|&a| {
                                        Ok((a, pressure(DiscParams::new(a, bs)?, fd_step, tol)?))
                                    })
                                    .collect::<Result<Vec<_>>>()
                            })
                        })
                        .collect();
                    let mut all = Vec::with_capacity(steps);
                    for h in handles {
                        all.extend(h.join().expect("scan worker panicked")?);
                    }
                    Ok::<_, Error>(all)
                })?
            };
            Ok(PressureCurve {
                points,
                beta_sigma: bs,
                fd_step,
            })
        })
        .collect()
}
