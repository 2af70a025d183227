//! One particle in a 1D box [-a, a] with Dirichlet walls: eigenstates on a
//! grid and the thermodynamic pressure computed along three independent
//! routes (boundary integral, center-point formula, finite differences of
//! the spectrum), plus Gibbs populations and adiabatic work.

mod pressure;
mod solver;
mod thermo;

pub use pressure::{
    p_ex_numeric, pressure_boundary, pressure_center, pressure_fd_adiabatic, pressure_fd_gibbs,
};
pub use solver::{solve_box, solve_box_extrapolated};
pub use thermo::{adiabatic_work, gibbs_populations, truncated_level_count, GIBBS_TAIL_CUTOFF};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The interval [-a, a]; natural units, one particle, one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxDomain {
    half_width: f64,
}

impl BoxDomain {
    pub fn new(half_width: f64) -> Result<Self> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "half-width {half_width} must be positive and finite"
            )));
        }
        Ok(Self { half_width })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Volume in 1D is the interval length 2a.
    pub fn volume(&self) -> f64 {
        2.0 * self.half_width
    }
}

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Potential acting inside the box, independent of the walls.
#[derive(Clone)]
pub struct InteriorPotential {
    v: Profile,
}

impl InteriorPotential {
    pub fn new<F>(v: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { v: Arc::new(v) }
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.v)(x)
    }
}

impl fmt::Debug for InteriorPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InteriorPotential(..)")
    }
}

/// Particle-wall interaction, parameterized by distance to the wall:
/// U_ex(x) = u(a - |x|) with u(a) = 0 (potential ground at the center).
#[derive(Clone)]
pub enum WallModel {
    /// No interaction beyond the confining Dirichlet walls.
    None,
    /// Attractive delta wells -u0 delta(a - b - |x|), sitting at distance
    /// b inside each wall. Never discretized on the grid; handled in
    /// closed form by the delta-wall model.
    DeltaWell { u0: f64, b: f64 },
    /// Smooth profile u(d) of the distance d to the nearest wall.
    Smooth(Profile),
}

impl WallModel {
    pub fn smooth<F>(u: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        WallModel::Smooth(Arc::new(u))
    }

    /// Check the structural invariants against a concrete domain.
    pub fn validate(&self, domain: BoxDomain) -> Result<()> {
        let a = domain.half_width();
        match self {
            WallModel::None => Ok(()),
            WallModel::DeltaWell { u0, b } => {
                if u0.is_nan() || *u0 <= 0.0 {
                    return Err(Error::InvalidInput(format!("u0 = {u0} must be > 0")));
                }
                if b.is_nan() || *b <= 0.0 || *b >= a {
                    return Err(Error::InvalidInput(format!(
                        "well offset b = {b} must satisfy 0 < b < a = {a}"
                    )));
                }
                Ok(())
            }
            WallModel::Smooth(u) => {
                let at_center = u(a);
                if at_center.abs() > 1e-9 {
                    return Err(Error::InvalidInput(format!(
                        "wall profile must vanish at the center: u(a) = {at_center:e}"
                    )));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for WallModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallModel::None => write!(f, "WallModel::None"),
            WallModel::DeltaWell { u0, b } => {
                write!(f, "WallModel::DeltaWell {{ u0: {u0}, b: {b} }}")
            }
            WallModel::Smooth(_) => write!(f, "WallModel::Smooth(..)"),
        }
    }
}

/// One bound/box level: energy, real wavefunction sampled on a uniform
/// grid over [-a, a] (both endpoint samples exactly zero), and the
/// one-sided boundary derivatives the pressure formulas need.
#[derive(Clone)]
pub struct Eigenstate {
    pub energy: f64,
    pub half_width: f64,
    /// Uniform samples of psi including both endpoints.
    pub psi: Vec<f64>,
    /// psi(0).
    pub psi_center: f64,
    /// psi'(0).
    pub dpsi_center: f64,
    /// (psi'(-a), psi'(+a)).
    pub dpsi_walls: (f64, f64),
    /// Energy truncation estimate (Richardson gap); zero for exact states.
    pub energy_error: f64,
    analytic: Option<Profile>,
}

impl Eigenstate {
    pub(crate) fn new_grid(
        energy: f64,
        half_width: f64,
        psi: Vec<f64>,
        psi_center: f64,
        dpsi_center: f64,
        dpsi_walls: (f64, f64),
        energy_error: f64,
    ) -> Self {
        Self {
            energy,
            half_width,
            psi,
            psi_center,
            dpsi_center,
            dpsi_walls,
            energy_error,
            analytic: None,
        }
    }

    /// Build a state from a closed-form wavefunction, keeping the exact
    /// evaluator for off-grid queries. The sample count is rounded up to
    /// odd so x = 0 lands on the grid and Simpson weights apply.
    pub fn from_analytic<F>(
        energy: f64,
        half_width: f64,
        psi_fn: F,
        grid_points: usize,
        dpsi_center: f64,
        dpsi_walls: (f64, f64),
    ) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let m = grid_points.max(3);
        let m = if m.is_multiple_of(2) { m + 1 } else { m };
        let h = 2.0 * half_width / (m - 1) as f64;
        let mut psi = Vec::with_capacity(m);
        for j in 0..m {
            let x = -half_width + h * j as f64;
            psi.push(psi_fn(x));
        }
        psi[0] = 0.0;
        psi[m - 1] = 0.0;
        let psi_center = psi_fn(0.0);
        Self {
            energy,
            half_width,
            psi,
            psi_center,
            dpsi_center,
            dpsi_walls,
            energy_error: 0.0,
            analytic: Some(Arc::new(psi_fn)),
        }
    }

    pub fn grid_step(&self) -> f64 {
        2.0 * self.half_width / (self.psi.len() - 1) as f64
    }

    /// x-coordinate of sample j.
    pub fn x_at(&self, j: usize) -> f64 {
        -self.half_width + self.grid_step() * j as f64
    }

    /// Evaluate psi at an arbitrary point: exact when the state carries a
    /// closed form, local cubic interpolation on the grid otherwise.
    /// Zero outside [-a, a].
    pub fn psi_at(&self, x: f64) -> f64 {
        if x.abs() > self.half_width {
            return 0.0;
        }
        if let Some(f) = &self.analytic {
            return f(x);
        }
        let m = self.psi.len();
        let h = self.grid_step();
        let t = (x + self.half_width) / h;
        // 4-point Lagrange stencil around the enclosing cell
        let j = (t.floor() as usize).clamp(1, m - 3);
        let s = t - j as f64; // in [-?, 2], typically [0, 1]
        let (f0, f1, f2, f3) = (
            self.psi[j - 1],
            self.psi[j],
            self.psi[j + 1],
            self.psi[j + 2],
        );
        let c0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        let c1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        let c2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
        let c3 = (s + 1.0) * s * (s - 1.0) / 6.0;
        c0 * f0 + c1 * f1 + c2 * f2 + c3 * f3
    }

    /// Trapezoid of psi^2 over the grid (exact rule for the solver's
    /// normalization convention; endpoints vanish).
    pub fn norm_squared(&self) -> f64 {
        let h = self.grid_step();
        h * self.psi.iter().map(|p| p * p).sum::<f64>()
    }
}

impl fmt::Debug for Eigenstate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Eigenstate")
            .field("energy", &self.energy)
            .field("half_width", &self.half_width)
            .field("grid_points", &self.psi.len())
            .field("psi_center", &self.psi_center)
            .field("dpsi_center", &self.dpsi_center)
            .field("dpsi_walls", &self.dpsi_walls)
            .finish()
    }
}

/// Level populations p_n: nonnegative, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    populations: Vec<f64>,
}

impl MixedState {
    pub fn new(populations: Vec<f64>) -> Result<Self> {
        if populations.is_empty() {
            return Err(Error::InvalidInput("populations must be nonempty".into()));
        }
        if populations.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidInput(
                "populations must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = populations.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "populations must sum to 1 within 1e-12, got {sum}"
            )));
        }
        Ok(Self { populations })
    }

    /// All weight on one level out of `n_levels`.
    pub fn pure(n_levels: usize, level: usize) -> Result<Self> {
        if level >= n_levels {
            return Err(Error::InvalidInput(format!(
                "level {level} out of range for {n_levels} levels"
            )));
        }
        let mut p = vec![0.0; n_levels];
        p[level] = 1.0;
        Ok(Self { populations: p })
    }

    pub fn uniform(n_levels: usize) -> Result<Self> {
        if n_levels == 0 {
            return Err(Error::InvalidInput("need at least one level".into()));
        }
        Ok(Self {
            populations: vec![1.0 / n_levels as f64; n_levels],
        })
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn len(&self) -> usize {
        self.populations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.populations.is_empty()
    }
}

/// Which route produced a pressure value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PressureMethod {
    /// Boundary-integral formula: wall gradients plus the wall term P_ex.
    Boundary,
    /// Center-point formula for wall potentials of the form u(a - |x|).
    Center,
    /// -(1/2) dE_n/da per level at fixed populations.
    FiniteDifference,
    /// T d(ln Z)/dV at fixed temperature.
    FreeEnergy,
}

/// Pressure with its per-level decomposition.
///
/// For all methods except `FreeEnergy`, `pressure` equals the
/// population-weighted sum of `per_level` exactly by construction; the
/// free-energy route differentiates ln Z directly, so there the identity
/// holds only up to finite-difference truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureReport {
    pub pressure: f64,
    pub per_level: Vec<f64>,
    pub method: PressureMethod,
    pub error_estimate: f64,
}

/// Full system parameterized by the half-width: domain, interior
/// potential, and wall interaction.
#[derive(Debug, Clone)]
pub struct BoxModel {
    pub domain: BoxDomain,
    pub interior: InteriorPotential,
    pub wall: WallModel,
}

impl BoxModel {
    pub fn new(domain: BoxDomain, interior: InteriorPotential, wall: WallModel) -> Result<Self> {
        wall.validate(domain)?;
        Ok(Self {
            domain,
            interior,
            wall,
        })
    }

    /// Same interior and wall profile at a different half-width; the wall
    /// profile re-anchors to the new wall (distance-to-wall form).
    pub fn at_half_width(&self, a: f64) -> Result<Self> {
        Ok(Self {
            domain: BoxDomain::new(a)?,
            interior: self.interior.clone(),
            wall: self.wall.clone(),
        })
    }

    /// Grid potential: interior plus the smooth wall term u(a - |x|).
    /// Delta wells are never placed on the grid.
    pub(crate) fn effective_potential(&self) -> Result<impl Fn(f64) -> f64 + '_> {
        if matches!(self.wall, WallModel::DeltaWell { .. }) {
            return Err(Error::UnsupportedWall(
                "delta wells are not discretized on the grid; use the closed-form model".into(),
            ));
        }
        let a = self.domain.half_width();
        Ok(move |x: f64| {
            let base = self.interior.eval(x);
            match &self.wall {
                WallModel::Smooth(u) => base + u(a - x.abs()),
                _ => base,
            }
        })
    }

    pub fn solve(&self, n_levels: usize, grid_size: usize) -> Result<Vec<Eigenstate>> {
        let v = self.effective_potential()?;
        solver::solve_grid_potential(self.domain, &v, n_levels, grid_size)
    }

    /// Solve on two grids (h and h/2) and Richardson-extrapolate energies
    /// and boundary/center scalars.
    pub fn solve_extrapolated(&self, n_levels: usize, grid_size: usize) -> Result<Vec<Eigenstate>> {
        let v = self.effective_potential()?;
        solver::solve_grid_potential_extrapolated(self.domain, &v, n_levels, grid_size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_shareable<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        assert_shareable::<Eigenstate>();
        assert_shareable::<MixedState>();
        assert_shareable::<BoxModel>();
        assert_shareable::<WallModel>();
        assert_shareable::<PressureReport>();
    }

    #[test]
    fn mixed_state_validation() {
        assert!(MixedState::new(vec![]).is_err());
        assert!(MixedState::new(vec![0.5, 0.6]).is_err());
        assert!(MixedState::new(vec![-0.1, 1.1]).is_err());
        assert!(MixedState::new(vec![0.25; 4]).is_ok());
        assert!(MixedState::pure(3, 3).is_err());
    }

    #[test]
    fn wall_profile_must_vanish_at_center() {
        let domain = BoxDomain::new(1.0).unwrap();
        let bad = WallModel::smooth(|d: f64| -(-d * d).exp());
        assert!(bad.validate(domain).is_err());
        let good = WallModel::smooth(|d: f64| (-d * d).exp() - (-1.0_f64).exp());
        assert!(good.validate(domain).is_ok());
    }
}
