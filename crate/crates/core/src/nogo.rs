//! Randomized verification of the no-go theorem and of the cross-formula
//! pressure identities.
//!
//! Without particle-wall interaction every per-level term of the
//! boundary pressure formula is a nonnegative boundary integral, so no
//! population mixture can push the pressure below zero, and eigenvalues
//! can only fall as the box widens. These checks run the solver over
//! seeded random interior potentials and look for violations beyond the
//! round-off floor, and at the same time compare the independent
//! pressure routes against each other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::qbox::{
    p_ex_numeric, pressure_boundary, pressure_center, pressure_fd_adiabatic, BoxDomain, BoxModel,
    InteriorPotential, MixedState, WallModel,
};

/// Round-off floor separating genuine theorem violations from noise.
pub const VIOLATION_FLOOR: f64 = -1e-9;
/// Allowed relative disagreement between pressure formulas.
pub const FORMULA_TOLERANCE: f64 = 1e-4;

const GRID_SIZE: usize = 1001;
const FD_STEP_FACTOR: f64 = 1e-4;

/// Aggregate outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NogoReport {
    pub trials: usize,
    /// Smallest per-level (or mixed-total) boundary pressure seen.
    pub min_per_level_pressure: f64,
    /// Count of eigenvalue increases under box expansion beyond 1e-9.
    pub monotonicity_violations: usize,
    /// Largest |P_route - P_fd| / max(1, |P_fd|) seen.
    pub max_formula_disagreement: f64,
    /// Solver errors, counted but not fatal.
    pub solver_failures: usize,
}

impl NogoReport {
    fn new() -> Self {
        Self {
            trials: 0,
            min_per_level_pressure: f64::MAX,
            monotonicity_violations: 0,
            max_formula_disagreement: 0.0,
            solver_failures: 0,
        }
    }

    /// True when the run contradicts the theorem or the formula identities.
    pub fn has_violations(&self) -> bool {
        self.min_per_level_pressure < VIOLATION_FLOOR
            || self.monotonicity_violations > 0
            || self.max_formula_disagreement > FORMULA_TOLERANCE
    }
}

/// One random smooth interior potential: a sum of up to three Gaussians,
/// reproducible from the generating seed and trial index.
#[derive(Debug, Clone)]
pub struct PotentialSample {
    pub description: String,
    pub seed: u64,
    pub terms: Vec<GaussianTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTerm {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

impl PotentialSample {
    fn draw(rng: &mut ChaCha8Rng, seed: u64, trial: usize, a: f64) -> Self {
        let terms: Vec<GaussianTerm> = (0..3)
            .map(|_| GaussianTerm {
                amplitude: rng.gen_range(-30.0..30.0),
                center: rng.gen_range(-0.8 * a..0.8 * a),
                width: rng.gen_range(0.1 * a..0.5 * a),
            })
            .collect();
        Self {
            description: format!("3-gaussian interior sample, seed {seed}, trial {trial}"),
            seed,
            terms,
        }
    }

    pub fn potential(&self) -> InteriorPotential {
        let terms = self.terms.clone();
        InteriorPotential::new(move |x: f64| {
            terms
                .iter()
                .map(|t| {
                    let u = (x - t.center) / t.width;
                    t.amplitude * (-u * u).exp()
                })
                .sum()
        })
    }
}

/// Deterministic batch of interior potentials for a given seed.
pub fn sample_potentials(n: usize, seed: u64, a: f64) -> Vec<PotentialSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| PotentialSample::draw(&mut rng, seed, i, a))
        .collect()
}

/// Population vector from the flat simplex distribution.
fn random_populations(rng: &mut ChaCha8Rng, n: usize) -> MixedState {
    let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = draws.iter().sum();
    MixedState::new(draws.iter().map(|d| d / sum).collect())
        .expect("simplex draw is a valid population vector")
}

/// Main no-go sweep: for each seeded random interior potential with no
/// wall interaction, every per-level boundary pressure and every random
/// mixture total must stay above the round-off floor, eigenvalues must
/// not rise under expansion, and the boundary and finite-difference
/// routes must agree.
pub fn check_nogo(n_trials: usize, seed: u64, a: f64, n_levels: usize) -> Result<NogoReport> {
    if n_trials == 0 {
        return Err(crate::Error::InvalidInput("need at least one trial".into()));
    }
    let domain = BoxDomain::new(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NogoReport::new();

    for trial in 0..n_trials {
        let sample = PotentialSample::draw(&mut rng, seed, trial, a);
        let populations = random_populations(&mut rng, n_levels);
        report.trials += 1;

        let model = BoxModel::new(domain, sample.potential(), WallModel::None)?;
        let outcome = (|| -> Result<()> {
            let states = model.solve_extrapolated(n_levels, GRID_SIZE)?;
            let p_ex = vec![0.0; n_levels];
            let bnd = pressure_boundary(&states, &populations, &p_ex)?;
            for &v in &bnd.per_level {
                report.min_per_level_pressure = report.min_per_level_pressure.min(v);
            }
            report.min_per_level_pressure = report.min_per_level_pressure.min(bnd.pressure);

            let fd = pressure_fd_adiabatic(&model, &populations, GRID_SIZE, FD_STEP_FACTOR * a)?;
            for (b, f) in bnd.per_level.iter().zip(&fd.per_level) {
                let dis = (b - f).abs() / f.abs().max(1.0);
                report.max_formula_disagreement = report.max_formula_disagreement.max(dis);
            }

            // expansion sweep for eigenvalue monotonicity
            let mut prev: Vec<f64> = states.iter().map(|s| s.energy).collect();
            for factor in [1.05, 1.10] {
                let wider = model.at_half_width(a * factor)?;
                let ws = wider.solve_extrapolated(n_levels, GRID_SIZE)?;
                for (w, p) in ws.iter().zip(&prev) {
                    if w.energy > p + 1e-9 {
                        report.monotonicity_violations += 1;
                    }
                }
                prev = ws.iter().map(|s| s.energy).collect();
            }
            Ok(())
        })();
        if outcome.is_err() {
            report.solver_failures += 1;
        }
    }
    Ok(report)
}

/// Eigenvalue monotonicity under expansion for one fixed interior
/// potential with no wall term: E_n(a_{i+1}) <= E_n(a_i) + 1e-9 along an
/// ascending grid of half-widths.
pub fn check_monotonicity(
    potential: &InteriorPotential,
    a_grid: &[f64],
    n_levels: usize,
) -> Result<NogoReport> {
    if a_grid.len() < 3 || a_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(crate::Error::InvalidInput(
            "a_grid must be ascending with at least 3 points".into(),
        ));
    }
    let mut report = NogoReport::new();
    let mut prev: Option<Vec<f64>> = None;
    for &a in a_grid {
        report.trials += 1;
        let model = BoxModel::new(BoxDomain::new(a)?, potential.clone(), WallModel::None)?;
        match model.solve_extrapolated(n_levels, GRID_SIZE) {
            Ok(states) => {
                let pops = MixedState::uniform(n_levels)?;
                let bnd = pressure_boundary(&states, &pops, &vec![0.0; n_levels])?;
                for &v in &bnd.per_level {
                    report.min_per_level_pressure = report.min_per_level_pressure.min(v);
                }
                let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
                if let Some(p) = &prev {
                    for (e, pe) in energies.iter().zip(p) {
                        if *e > pe + 1e-9 {
                            report.monotonicity_violations += 1;
                        }
                    }
                }
                prev = Some(energies);
            }
            Err(_) => report.solver_failures += 1,
        }
    }
    Ok(report)
}

/// Generalized no-go: a smooth wall whose potential decreases pointwise
/// under expansion (checked by sampling) still gives P >= 0 for any
/// population mixture. The wall-anchored form also makes the center
/// formula applicable, so all three routes are compared here.
pub fn check_generalized_nogo(wall: &WallModel, a: f64, n_levels: usize) -> Result<NogoReport> {
    let domain = BoxDomain::new(a)?;
    let u = match wall {
        WallModel::Smooth(u) => u,
        WallModel::None => {
            return Err(crate::Error::InvalidInput(
                "use check_nogo for the wall-free case".into(),
            ))
        }
        WallModel::DeltaWell { .. } => {
            return Err(crate::Error::InvalidInput(
                "attractive delta wall does not satisfy the monotone-expansion precondition".into(),
            ))
        }
    };
    // sampled precondition: u((1+alpha) a - |x|) <= u(a - |x|)
    for alpha in [1e-3, 1e-2] {
        for i in 0..=200 {
            let x = -a + 2.0 * a * i as f64 / 200.0;
            let grown = u((1.0 + alpha) * a - x.abs());
            let now = u(a - x.abs());
            if grown > now + 1e-12 {
                return Err(crate::Error::InvalidInput(format!(
                    "wall profile rises under expansion at x = {x}, alpha = {alpha}: {grown} > {now}"
                )));
            }
        }
    }

    let model = BoxModel::new(domain, InteriorPotential::zero(), wall.clone())?;
    let states = model.solve_extrapolated(n_levels, GRID_SIZE)?;
    let p_ex: Vec<f64> = states
        .iter()
        .map(|s| p_ex_numeric(s, wall, domain, 1e-4))
        .collect::<Result<_>>()?;

    let mut report = NogoReport::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f_676f); // fixed internal stream
    for _ in 0..16 {
        report.trials += 1;
        let populations = random_populations(&mut rng, n_levels);
        let bnd = pressure_boundary(&states, &populations, &p_ex)?;
        let ctr = pressure_center(&states, &populations)?;
        let fd = pressure_fd_adiabatic(&model, &populations, GRID_SIZE, FD_STEP_FACTOR * a)?;
        for &v in &bnd.per_level {
            report.min_per_level_pressure = report.min_per_level_pressure.min(v);
        }
        report.min_per_level_pressure = report.min_per_level_pressure.min(bnd.pressure);
        for (r, f) in [&bnd, &ctr].iter().zip(std::iter::repeat(&fd)) {
            let dis = (r.pressure - f.pressure).abs() / f.pressure.abs().max(1.0);
            report.max_formula_disagreement = report.max_formula_disagreement.max(dis);
        }
    }
    Ok(report)
}
