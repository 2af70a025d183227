//! Gibbs populations over a truncated level set and adiabatic work.

use crate::error::{Error, Result};
use crate::qbox::{BoxModel, Eigenstate, MixedState};

/// Gibbs sums formally run over all levels; a level set is considered
/// converged once the last population drops below this fraction of the
/// ground-state population.
pub const GIBBS_TAIL_CUTOFF: f64 = 1e-12;

/// Canonical populations p_n proportional to exp(-beta E_n), normalized
/// over the given (truncated) level set. Computed with a max-shift so
/// large beta or deep levels never overflow. beta = 0 gives the uniform
/// distribution.
pub fn gibbs_populations(energies: &[f64], beta: f64) -> Result<MixedState> {
    if energies.is_empty() {
        return Err(Error::InvalidInput("need at least one energy".into()));
    }
    if energies.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidInput("energies must be finite".into()));
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidInput(format!(
            "beta = {beta} must be finite and >= 0"
        )));
    }
    let emin = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = energies
        .iter()
        .map(|e| (-beta * (e - emin)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let populations = weights.iter().map(|w| w / z).collect();
    // renormalize exactly to absorb the last ulp of the division
    MixedState::new(populations)
}

/// Level count realizing the all-levels Gibbs sum at inverse temperature
/// beta > 0: the set grows until p_n < GIBBS_TAIL_CUTOFF * p_0, capped by
/// what the grid can resolve. Returns the count together with the tail
/// ratio p_last/p_0 of the converged set (the truncation error estimate).
pub fn truncated_level_count(
    model: &BoxModel,
    beta: f64,
    grid_size: usize,
) -> Result<(usize, f64)> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "beta = {beta} must be > 0 for a convergent Gibbs tail"
        )));
    }
    let mut n = 8usize;
    loop {
        let n_try = n.min(grid_size / 8).max(1);
        let states = model.solve_extrapolated(n_try, grid_size)?;
        let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
        let pops = gibbs_populations(&energies, beta)?;
        let p = pops.populations();
        if let Some(idx) = p.iter().position(|&t| t < GIBBS_TAIL_CUTOFF * p[0]) {
            let count = (idx + 1).max(1);
            return Ok((count, p[count - 1] / p[0]));
        }
        if n_try * 8 >= grid_size {
            // resolvability cap; report the remaining tail honestly
            return Ok((n_try, p[n_try - 1] / p[0]));
        }
        n *= 2;
    }
}

/// Work done on the system in a slow thermally isolated change of the
/// box, with level populations held fixed:
/// W = sum_n p_n (E_n(final) - E_n(initial)).
pub fn adiabatic_work(
    states_initial: &[Eigenstate],
    states_final: &[Eigenstate],
    populations: &MixedState,
) -> Result<f64> {
    if states_initial.len() != states_final.len() {
        return Err(Error::LevelMismatch {
            left: states_initial.len(),
            right: states_final.len(),
        });
    }
    if states_initial.len() != populations.len() {
        return Err(Error::LevelMismatch {
            left: states_initial.len(),
            right: populations.len(),
        });
    }
    Ok(populations
        .populations()
        .iter()
        .zip(states_initial.iter().zip(states_final.iter()))
        .map(|(p, (si, sf))| p * (sf.energy - si.energy))
        .sum())
}
