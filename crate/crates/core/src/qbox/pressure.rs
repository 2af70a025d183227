//! Three independent routes to the thermodynamic pressure of the box.
//!
//! Boundary route: P = (1/(D V)) sum_n p_n [ (a/2)(|psi'(-a)|^2 +
//! |psi'(a)|^2) + P_ex^(n) ] with D = 1, V = 2a. The first term is a
//! boundary integral of |grad psi|^2 weighted by x.r >= 0, so it can
//! never be negative; only the wall term P_ex can drive P below zero.
//!
//! Center route, valid for wall potentials of the form u(a - |x|):
//! P = sum_n p_n [ |psi'(0)|^2 / 2 + E_n |psi(0)|^2 ].
//!
//! Finite-difference route: P_n = -dE_n/dV at fixed populations, or
//! T d(ln Z)/dV at fixed temperature.

use crate::error::{Error, Result};
use crate::qbox::thermo::gibbs_populations;
use crate::qbox::{
    BoxDomain, BoxModel, Eigenstate, MixedState, PressureMethod, PressureReport, WallModel,
};

fn check_lengths(states: &[Eigenstate], populations: &MixedState) -> Result<()> {
    if states.is_empty() {
        return Err(Error::InvalidInput("no states given".into()));
    }
    if states.len() != populations.len() {
        return Err(Error::LevelMismatch {
            left: states.len(),
            right: populations.len(),
        });
    }
    Ok(())
}

fn weighted(per_level: &[f64], populations: &MixedState) -> f64 {
    per_level
        .iter()
        .zip(populations.populations())
        .map(|(v, p)| p * v)
        .sum()
}

/// Center-point pressure formula. Requires the full potential to be of
/// the wall-anchored form u(a - |x|) (u = 0 included); not meaningful
/// for arbitrary interior potentials.
pub fn pressure_center(states: &[Eigenstate], populations: &MixedState) -> Result<PressureReport> {
    check_lengths(states, populations)?;
    let per_level: Vec<f64> = states
        .iter()
        .map(|s| 0.5 * s.dpsi_center * s.dpsi_center + s.energy * s.psi_center * s.psi_center)
        .collect();
    let error_estimate = states
        .iter()
        .zip(populations.populations())
        .map(|(s, p)| p * s.energy_error)
        .sum();
    Ok(PressureReport {
        pressure: weighted(&per_level, populations),
        per_level,
        method: PressureMethod::Center,
        error_estimate,
    })
}

/// Boundary-integral pressure. `p_ex` holds the per-level wall terms
/// P_ex^(n) (zero when there is no particle-wall interaction; see
/// [`p_ex_numeric`]).
pub fn pressure_boundary(
    states: &[Eigenstate],
    populations: &MixedState,
    p_ex: &[f64],
) -> Result<PressureReport> {
    check_lengths(states, populations)?;
    if p_ex.len() != states.len() {
        return Err(Error::LevelMismatch {
            left: states.len(),
            right: p_ex.len(),
        });
    }
    let a = states[0].half_width;
    let volume = 2.0 * a;
    let per_level: Vec<f64> = states
        .iter()
        .zip(p_ex)
        .map(|(s, ex)| {
            let (dl, dr) = s.dpsi_walls;
            (0.5 * a * (dl * dl + dr * dr) + ex) / volume
        })
        .collect();
    let error_estimate = states
        .iter()
        .zip(populations.populations())
        .map(|(s, p)| p * s.energy_error)
        .sum();
    Ok(PressureReport {
        pressure: weighted(&per_level, populations),
        per_level,
        method: PressureMethod::Boundary,
        error_estimate,
    })
}

/// Wall term of the boundary formula for one level:
/// P_ex = lim_{alpha->0} <n| U_ex(x; Omega) - U_ex(x; Omega') |n> / alpha,
/// where Omega' is the box scaled by (1 + alpha) and the wall profile
/// re-anchors to the moved wall (a delta well keeps its distance b).
///
/// Evaluated by central quotients at +-alpha and +-alpha/2 combined with
/// one extrapolation level. The central form matters: a delta well reads
/// the wavefunction's kink, and one-sided quotients converge to the
/// wrong (one-sided) derivative there.
pub fn p_ex_numeric(
    state: &Eigenstate,
    wall: &WallModel,
    domain: BoxDomain,
    alpha: f64,
) -> Result<f64> {
    if matches!(wall, WallModel::None) {
        return Ok(0.0);
    }
    if alpha.is_nan() || alpha <= 0.0 || alpha > 0.05 {
        return Err(Error::InvalidInput(format!(
            "alpha = {alpha} must lie in (0, 0.05]"
        )));
    }
    if alpha < 1e-7 {
        return Err(Error::InvalidInput(format!(
            "alpha = {alpha} too small: round-off cancellation dominates below 1e-7"
        )));
    }
    let g = |s: f64| wall_expectation(state, wall, domain, 1.0 + s);
    let c_full = (g(-alpha)? - g(alpha)?) / (2.0 * alpha);
    let c_half = (g(-0.5 * alpha)? - g(0.5 * alpha)?) / alpha;
    Ok(2.0 * c_half - c_full)
}

/// <psi| U_ex(x; scaled domain) |psi> with the original state psi.
fn wall_expectation(
    state: &Eigenstate,
    wall: &WallModel,
    domain: BoxDomain,
    scale: f64,
) -> Result<f64> {
    let a = domain.half_width();
    match wall {
        WallModel::None => Ok(0.0),
        WallModel::DeltaWell { u0, b } => {
            let pos = scale * a - b;
            if pos <= 0.0 || pos >= a {
                return Err(Error::InvalidInput(format!(
                    "scaled well position {pos} leaves the box; reduce alpha (b = {b}, a = {a})"
                )));
            }
            let pl = state.psi_at(pos);
            let pr = state.psi_at(-pos);
            Ok(-u0 * (pl * pl + pr * pr))
        }
        WallModel::Smooth(u) => {
            // composite Simpson on the state's own grid
            let m = state.psi.len();
            if m.is_multiple_of(2) {
                return Err(Error::InvalidInput(
                    "grid must have an odd number of samples for Simpson weights".into(),
                ));
            }
            let h = state.grid_step();
            let mut sum = 0.0;
            for (j, psi) in state.psi.iter().enumerate() {
                let x = state.x_at(j);
                let w = if j == 0 || j == m - 1 {
                    1.0
                } else if j % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                sum += w * psi * psi * u(scale * a - x.abs());
            }
            Ok(sum * h / 3.0)
        }
    }
}

/// Per-level adiabatic pressure P_n = -dE_n/dV = -(1/2) dE_n/da by the
/// five-point central difference, populations held fixed.
pub fn pressure_fd_adiabatic(
    model: &BoxModel,
    populations: &MixedState,
    grid_size: usize,
    step: f64,
) -> Result<PressureReport> {
    let n_levels = populations.len();
    let energies = fd_energies(model, n_levels, grid_size, step)?;
    let per_level = fd_per_level(&energies, step);
    let error_estimate = fd_error_estimate(&energies, populations, step);
    Ok(PressureReport {
        pressure: weighted(&per_level, populations),
        per_level,
        method: PressureMethod::FiniteDifference,
        error_estimate,
    })
}

/// Isothermal pressure P = T d(ln Z)/dV at inverse temperature beta,
/// with Z truncated to the same `n_levels` at every evaluation point.
/// `per_level` carries the adiabatic per-level values from the same
/// solves, so the agreement of the two routes can be read off directly.
pub fn pressure_fd_gibbs(
    model: &BoxModel,
    beta: f64,
    n_levels: usize,
    grid_size: usize,
    step: f64,
) -> Result<PressureReport> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "beta = {beta} must be positive and finite (use the adiabatic route for beta = 0)"
        )));
    }
    let energies = fd_energies(model, n_levels, grid_size, step)?;
    let lnz = |e: &FdSolve| -> f64 {
        let emin = e.energies.iter().cloned().fold(f64::INFINITY, f64::min);
        let s: f64 = e.energies.iter().map(|t| (-beta * (t - emin)).exp()).sum();
        -beta * emin + s.ln()
    };
    let dlnz = (lnz(&energies[0]) - 8.0 * lnz(&energies[1]) + 8.0 * lnz(&energies[2])
        - lnz(&energies[3]))
        / (12.0 * step);
    let pressure = dlnz / (2.0 * beta); // T d(lnZ)/dV, V = 2a
    let per_level = fd_per_level(&energies, step);
    let populations = gibbs_populations(&center_energies(&energies), beta)?;
    let error_estimate = fd_error_estimate(&energies, &populations, step);
    Ok(PressureReport {
        pressure,
        per_level,
        method: PressureMethod::FreeEnergy,
        error_estimate,
    })
}

struct FdSolve {
    energies: Vec<f64>,
    energy_errors: Vec<f64>,
}

/// Solve the model at a - 2h, a - h, a + h, a + 2h (in that order).
fn fd_energies(
    model: &BoxModel,
    n_levels: usize,
    grid_size: usize,
    step: f64,
) -> Result<[FdSolve; 4]> {
    let a = model.domain.half_width();
    if step.is_nan() || step <= 0.0 || 2.0 * step >= a {
        return Err(Error::InvalidInput(format!(
            "fd step {step} must satisfy 0 < 2 step < a = {a}"
        )));
    }
    let mut out = Vec::with_capacity(4);
    for s in [-2.0, -1.0, 1.0, 2.0] {
        let shifted = model.at_half_width(a + s * step)?;
        let states = shifted.solve_extrapolated(n_levels, grid_size)?;
        out.push(FdSolve {
            energies: states.iter().map(|t| t.energy).collect(),
            energy_errors: states.iter().map(|t| t.energy_error).collect(),
        });
    }
    Ok([out.remove(0), out.remove(0), out.remove(0), out.remove(0)])
}

fn fd_per_level(e: &[FdSolve; 4], step: f64) -> Vec<f64> {
    let n = e[0].energies.len();
    (0..n)
        .map(|j| {
            let d = (e[0].energies[j] - 8.0 * e[1].energies[j] + 8.0 * e[2].energies[j]
                - e[3].energies[j])
                / (12.0 * step);
            -0.5 * d
        })
        .collect()
}

/// Midpoint energies reconstructed from the stencil (4-point average is
/// exact through third order; good enough for populations).
fn center_energies(e: &[FdSolve; 4]) -> Vec<f64> {
    let n = e[0].energies.len();
    (0..n)
        .map(|j| {
            (-(e[0].energies[j] + e[3].energies[j]) + 4.0 * (e[1].energies[j] + e[2].energies[j]))
                / 6.0
        })
        .collect()
}

fn fd_error_estimate(e: &[FdSolve; 4], populations: &MixedState, step: f64) -> f64 {
    let n = e[0].energies.len();
    (0..n)
        .zip(populations.populations())
        .map(|(j, p)| {
            let worst = e.iter().map(|s| s.energy_errors[j]).fold(0.0_f64, f64::max);
            p * 1.5 * worst / step
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbox::{solve_box_extrapolated, InteriorPotential};
    use std::f64::consts::PI;

    fn box_states(a: f64, n: usize) -> Vec<Eigenstate> {
        solve_box_extrapolated(
            BoxDomain::new(a).unwrap(),
            &InteriorPotential::zero(),
            n,
            1001,
        )
        .unwrap()
    }

    #[test]
    fn center_formula_ground_state() {
        let states = box_states(1.0, 1);
        let r = pressure_center(&states, &MixedState::pure(1, 0).unwrap()).unwrap();
        let exact = PI * PI / 8.0;
        assert!((r.pressure - exact).abs() / exact < 1e-7, "{}", r.pressure);
        assert_eq!(r.method, PressureMethod::Center);
    }

    #[test]
    fn center_formula_first_excited() {
        // psi_2(0) = 0; the |psi'(0)|^2/2 term alone carries pi^2/2
        let states = box_states(1.0, 2);
        let r = pressure_center(&states, &MixedState::pure(2, 1).unwrap()).unwrap();
        let exact = PI * PI / 2.0;
        assert!((r.pressure - exact).abs() / exact < 1e-7, "{}", r.pressure);
    }

    #[test]
    fn boundary_formula_ground_state() {
        let states = box_states(1.0, 1);
        let r = pressure_boundary(&states, &MixedState::pure(1, 0).unwrap(), &[0.0]).unwrap();
        let exact = PI * PI / 8.0;
        assert!((r.pressure - exact).abs() / exact < 1e-7, "{}", r.pressure);
    }

    #[test]
    fn boundary_nonnegative_without_wall() {
        let pot = InteriorPotential::new(|x: f64| -25.0 * (-(x * x) / 0.02).exp());
        let states = solve_box_extrapolated(BoxDomain::new(1.0).unwrap(), &pot, 4, 1001).unwrap();
        let r = pressure_boundary(
            &states,
            &MixedState::uniform(4).unwrap(),
            &[0.0, 0.0, 0.0, 0.0],
        )
        .unwrap();
        for (i, v) in r.per_level.iter().enumerate() {
            assert!(*v >= -1e-9, "level {i}: {v}");
        }
    }

    #[test]
    fn report_is_weighted_sum() {
        let states = box_states(1.0, 3);
        let pops = MixedState::new(vec![0.5, 0.3, 0.2]).unwrap();
        let r = pressure_center(&states, &pops).unwrap();
        let direct: f64 = r
            .per_level
            .iter()
            .zip(pops.populations())
            .map(|(v, p)| v * p)
            .sum();
        assert_eq!(r.pressure, direct);
    }

    #[test]
    fn p_ex_no_wall_is_zero() {
        let states = box_states(1.0, 1);
        let v = p_ex_numeric(
            &states[0],
            &WallModel::None,
            BoxDomain::new(1.0).unwrap(),
            1e-4,
        )
        .unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn p_ex_smooth_wall_matches_quadrature_oracle() {
        // u(d) = -exp(-d^2): P_ex -> -a <u'(a - |x|)>, u'(d) = 2d exp(-d^2)
        let a = 1.0;
        let domain = BoxDomain::new(a).unwrap();
        let wall = WallModel::smooth(|d: f64| -(-d * d).exp());
        let model = BoxModel {
            domain,
            interior: InteriorPotential::zero(),
            wall: wall.clone(),
        };
        let states = model.solve_extrapolated(3, 1501).unwrap();
        for s in &states {
            let got = p_ex_numeric(s, &wall, domain, 1e-4).unwrap();
            // independent oracle: trapezoid of -a psi^2 u' on the grid
            let h = s.grid_step();
            let oracle: f64 = -a
                * h
                * s.psi
                    .iter()
                    .enumerate()
                    .map(|(j, p)| {
                        let d = a - s.x_at(j).abs();
                        p * p * 2.0 * d * (-d * d).exp()
                    })
                    .sum::<f64>();
            assert!(
                (got - oracle).abs() < 1e-5 * oracle.abs().max(1.0),
                "E = {}: {got} vs {oracle}",
                s.energy
            );
        }
    }

    #[test]
    fn p_ex_rejects_bad_alpha() {
        let states = box_states(1.0, 1);
        let wall = WallModel::smooth(|d: f64| -(-d * d).exp());
        let domain = BoxDomain::new(1.0).unwrap();
        assert!(p_ex_numeric(&states[0], &wall, domain, 1e-9).is_err());
        assert!(p_ex_numeric(&states[0], &wall, domain, 0.3).is_err());
    }

    #[test]
    fn fd_ground_state_box() {
        let model = BoxModel::new(
            BoxDomain::new(1.0).unwrap(),
            InteriorPotential::zero(),
            WallModel::None,
        )
        .unwrap();
        let r =
            pressure_fd_adiabatic(&model, &MixedState::pure(1, 0).unwrap(), 1001, 1e-4).unwrap();
        let exact = PI * PI / 8.0;
        assert!(
            (r.pressure - exact).abs() / exact < 1e-8,
            "{} vs {exact}",
            r.pressure
        );
    }

    #[test]
    fn gibbs_route_matches_weighted_adiabatic() {
        let model = BoxModel::new(
            BoxDomain::new(1.0).unwrap(),
            InteriorPotential::zero(),
            WallModel::None,
        )
        .unwrap();
        let beta = 1.0;
        let r = pressure_fd_gibbs(&model, beta, 5, 1001, 1e-4).unwrap();
        let states = box_states(1.0, 5);
        let pops =
            gibbs_populations(&states.iter().map(|s| s.energy).collect::<Vec<_>>(), beta).unwrap();
        let weighted: f64 = r
            .per_level
            .iter()
            .zip(pops.populations())
            .map(|(v, p)| v * p)
            .sum();
        assert!(
            (r.pressure - weighted).abs() < 1e-6 * weighted.abs().max(1.0),
            "lnZ route {} vs weighted {weighted}",
            r.pressure
        );
    }

    #[test]
    fn delta_wall_cannot_go_on_grid() {
        let model = BoxModel::new(
            BoxDomain::new(1.0).unwrap(),
            InteriorPotential::zero(),
            WallModel::DeltaWell { u0: 2.0, b: 0.5 },
        )
        .unwrap();
        assert!(matches!(
            model.solve(1, 501),
            Err(Error::UnsupportedWall(_))
        ));
    }
}
