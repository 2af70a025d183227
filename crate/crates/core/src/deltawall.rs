//! Exact treatment of the quantum negative-pressure example: one particle
//! in [-a, a] with attractive delta wells of strength u0 at |x| = a - b.
//!
//! The single symmetric bound state
//!     psi(x) = A sinh[k(a+x)]  on [-a, b-a]
//!            = B cosh[k x]     on [b-a, a-b]
//!            = A sinh[k(a-x)]  on [a-b, a]
//! has k = sqrt(2|E|) fixed by coth(kb) + tanh(k(a-b)) = 2 u0 / k, and
//! exists only for u0 > 1/(2b). Its energy *rises* as the box widens, so
//! the pressure P = E |psi(0)|^2 is negative: the gas pulls the walls in.

use crate::error::{Error, Result};
use crate::numerics::find_root;
use crate::qbox::{BoxDomain, Eigenstate, PressureMethod, PressureReport, WallModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaWallParams {
    /// Well strength u0 > 0.
    pub u0: f64,
    /// Box half-width.
    pub a: f64,
    /// Distance of each well from its wall, 0 < b < a.
    pub b: f64,
}

impl DeltaWallParams {
    pub fn new(u0: f64, a: f64, b: f64) -> Result<Self> {
        if !u0.is_finite() || u0 <= 0.0 {
            return Err(Error::InvalidInput(format!("u0 = {u0} must be > 0")));
        }
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidInput(format!("a = {a} must be > 0")));
        }
        if b.is_nan() || b <= 0.0 || b >= a {
            return Err(Error::InvalidInput(format!(
                "need 0 < b < a, got b = {b}, a = {a}"
            )));
        }
        Ok(Self { u0, a, b })
    }

    /// Minimum strength for a bound state, from the k -> 0 expansion of
    /// the dispersion relation: coth(kb) ~ 1/(kb) forces u0 > 1/(2b).
    pub fn existence_threshold(&self) -> f64 {
        1.0 / (2.0 * self.b)
    }

    pub fn domain(&self) -> BoxDomain {
        BoxDomain::new(self.a).expect("validated in new()")
    }

    pub fn wall(&self) -> WallModel {
        WallModel::DeltaWell {
            u0: self.u0,
            b: self.b,
        }
    }
}

/// The symmetric bound level in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    /// E_m < 0.
    pub energy: f64,
    /// k = sqrt(2 |E_m|).
    pub k: f64,
    /// Wall-piece amplitude A (normalized).
    pub amp_wall: f64,
    /// Center-piece amplitude B (normalized); also psi(0).
    pub amp_center: f64,
    /// Dispersion-relation residual at the returned k.
    pub residual: f64,
}

/// y coth(y), series-stabilized near zero.
fn y_coth_y(y: f64) -> f64 {
    if y.abs() < 1e-4 {
        let y2 = y * y;
        1.0 + y2 / 3.0 - y2 * y2 / 45.0
    } else {
        y / y.tanh()
    }
}

/// Dispersion relation rearranged as
///   f(k) = (kb coth(kb) - 2 u0 b) / (kb) + tanh(k (a-b)),
/// which keeps its sign exact through the k -> 0 cancellation: at the
/// existence threshold the leading term is (1 - 2 u0 b)/(kb).
fn dispersion(params: &DeltaWallParams, k: f64) -> f64 {
    let y = k * params.b;
    (y_coth_y(y) - 2.0 * params.u0 * params.b) / y + (k * (params.a - params.b)).tanh()
}

/// Solve for the symmetric bound state, or report that none exists.
pub fn bound_state(params: &DeltaWallParams) -> Result<BoundState> {
    let k_lo = 1e-8;
    // left side exceeds 1 while the right side has dropped below 1 here
    let k_hi = 2.0 * params.u0 + 2.0;
    if dispersion(params, k_lo) >= 0.0 {
        return Err(Error::NoBoundState {
            u0: params.u0,
            threshold: params.existence_threshold(),
        });
    }
    let root = find_root(|k| dispersion(params, k), k_lo, k_hi, 1e-13)?;
    let k = root.root;
    let energy = -0.5 * k * k;

    // B/A = sinh(kb)/cosh(k(a-b)), in overflow-safe form for large k
    let (kb, kab) = (k * params.b, k * (params.a - params.b));
    let ratio = if kb > 350.0 || kab > 350.0 {
        (k * (2.0 * params.b - params.a)).exp() * (1.0 - (-2.0 * kb).exp())
            / (1.0 + (-2.0 * kab).exp())
    } else {
        kb.sinh() / kab.cosh()
    };

    // closed-form normalization: two wall pieces + center piece
    let wall_piece = (2.0 * kb).sinh() / (4.0 * k) - params.b / 2.0;
    let mid_piece = ratio * ratio * ((2.0 * kab).sinh() / (2.0 * k) + (params.a - params.b));
    let amp_wall = 1.0 / (2.0 * wall_piece + mid_piece).sqrt();
    let amp_center = amp_wall * ratio;

    Ok(BoundState {
        energy,
        k,
        amp_wall,
        amp_center,
        residual: root.residual,
    })
}

/// Evaluate the three-piece wavefunction at x in [-a, a].
pub fn wavefunction_at(state: &BoundState, params: &DeltaWallParams, x: f64) -> Result<f64> {
    let (a, b) = (params.a, params.b);
    if x.abs() > a {
        return Err(Error::OutOfDomain { x, lo: -a, hi: a });
    }
    let k = state.k;
    Ok(if x < b - a {
        state.amp_wall * (k * (a + x)).sinh()
    } else if x <= a - b {
        state.amp_center * (k * x).cosh()
    } else {
        state.amp_wall * (k * (a - x)).sinh()
    })
}

/// Pressure of the bound state from the center-point formula. With
/// psi'(0) = 0 this is P = E_m |psi(0)|^2 = -|E_m| B^2 < 0. The report's
/// error estimate is the gap to the independent finite-difference value
/// -(1/2) dE_m/da.
pub fn bound_pressure(params: &DeltaWallParams) -> Result<PressureReport> {
    let state = bound_state(params)?;
    let pressure = state.energy * state.amp_center * state.amp_center;
    let fd = fd_pressure(params, 1e-4 * params.a)?;
    Ok(PressureReport {
        pressure,
        per_level: vec![pressure],
        method: PressureMethod::Center,
        error_estimate: (pressure - fd).abs(),
    })
}

/// Reference pressure -(1/2) dE_m/da by the five-point difference over
/// re-solves of the dispersion relation.
pub fn fd_pressure(params: &DeltaWallParams, step: f64) -> Result<f64> {
    if step.is_nan() || step <= 0.0 || 2.0 * step >= params.a - params.b {
        return Err(Error::InvalidInput(format!(
            "fd step {step} too large for a = {}, b = {}",
            params.a, params.b
        )));
    }
    let energy_at = |a: f64| -> Result<f64> {
        Ok(bound_state(&DeltaWallParams::new(params.u0, a, params.b)?)?.energy)
    };
    let h = step;
    let a = params.a;
    let de = (energy_at(a - 2.0 * h)? - 8.0 * energy_at(a - h)? + 8.0 * energy_at(a + h)?
        - energy_at(a + 2.0 * h)?)
        / (12.0 * h);
    Ok(-0.5 * de)
}

/// Sample the closed-form state onto a grid-backed [`Eigenstate`], keeping
/// the exact evaluator for off-grid queries (the kink at the wells makes
/// interpolation there lossy).
pub fn to_eigenstate(
    params: &DeltaWallParams,
    state: &BoundState,
    grid_points: usize,
) -> Eigenstate {
    let m = if grid_points.is_multiple_of(2) {
        grid_points + 1
    } else {
        grid_points
    };
    let p = *params;
    let s = *state;
    let dpsi_wall = state.amp_wall * state.k; // d/dx A sinh(k(a+x)) at -a
    Eigenstate::from_analytic(
        state.energy,
        params.a,
        move |x| wavefunction_at(&s, &p, x).unwrap_or(0.0),
        m,
        0.0, // symmetric state
        (dpsi_wall, -dpsi_wall),
    )
}
