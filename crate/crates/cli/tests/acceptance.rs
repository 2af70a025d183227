//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured numbers (visible with --nocapture).
//!
//! Tolerances are pinned in code; a red test here is a release blocker.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use presslab_core::deltawall::{self, DeltaWallParams};
use presslab_core::discgas::{self, DiscParams};
use presslab_core::nogo;
use presslab_core::numerics::{bessel_i0, integrate};
use presslab_core::qbox::{
    gibbs_populations, pressure_boundary, pressure_center, pressure_fd_adiabatic,
    pressure_fd_gibbs, solve_box_extrapolated, BoxDomain, BoxModel, InteriorPotential, MixedState,
    WallModel,
};

fn box_level(n: usize, a: f64) -> f64 {
    (n as f64 * PI).powi(2) / (8.0 * a * a)
}

#[test]
fn criterion_01_box_spectrum() {
    let start = Instant::now();
    let states = solve_box_extrapolated(
        BoxDomain::new(1.0).unwrap(),
        &InteriorPotential::zero(),
        5,
        2001,
    )
    .unwrap();
    let mut worst = 0.0_f64;
    for (i, s) in states.iter().enumerate() {
        let exact = box_level(i + 1, 1.0);
        worst = worst.max((s.energy - exact).abs() / exact);
    }
    let elapsed = start.elapsed();
    assert!(worst < 1e-6, "worst relative energy error {worst:e}");
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "PASS criterion 1: box spectrum, 5 levels, worst rel err {worst:.2e} (< 1e-6), {:.2}s (< 5s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_02_pressure_formula_triangle() {
    let model = BoxModel::new(
        BoxDomain::new(1.0).unwrap(),
        InteriorPotential::zero(),
        WallModel::None,
    )
    .unwrap();
    let states = model.solve_extrapolated(5, 2001).unwrap();
    let pops = MixedState::uniform(5).unwrap();
    let center = pressure_center(&states, &pops).unwrap();
    let boundary = pressure_boundary(&states, &pops, &[0.0; 5]).unwrap();
    let fd = pressure_fd_adiabatic(&model, &pops, 2001, 1e-4).unwrap();

    let mut worst = 0.0_f64;
    for n in 0..5 {
        let exact = box_level(n + 1, 1.0); // n^2 pi^2 / (8 a^3) at a = 1
        for (name, v) in [
            ("center", center.per_level[n]),
            ("boundary", boundary.per_level[n]),
            ("fd", fd.per_level[n]),
        ] {
            let rel = (v - exact).abs() / exact;
            worst = worst.max(rel);
            assert!(rel < 1e-6, "level {n} {name}: {v} vs {exact} (rel {rel:e})");
        }
    }
    println!(
        "PASS criterion 2: center = boundary = fd = n^2 pi^2/8, worst rel err {worst:.2e} (< 1e-6)"
    );
}

#[test]
fn criterion_03_delta_wall_negative_pressure() {
    let start = Instant::now();
    let params = DeltaWallParams::new(2.0, 1.0, 0.5).unwrap();
    let state = deltawall::bound_state(&params).unwrap();
    assert!(
        state.residual.abs() <= 1e-12,
        "dispersion residual {:e}",
        state.residual
    );
    let report = deltawall::bound_pressure(&params).unwrap();
    assert!(report.pressure < 0.0, "P = {}", report.pressure);
    // exact by construction: P = E_m B^2 (= -|E_m| |psi(0)|^2)
    assert_eq!(
        report.pressure,
        state.energy * state.amp_center * state.amp_center
    );
    let fd = deltawall::fd_pressure(&params, 1e-4).unwrap();
    let rel = (report.pressure - fd).abs() / fd.abs();
    assert!(
        rel <= 1e-4,
        "center {} vs fd {fd} (rel {rel:e})",
        report.pressure
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "PASS criterion 3: delta wall P = {:.6} < 0, residual {:.1e} (<= 1e-12), |P - P_fd|/|P| = {rel:.1e} (<= 1e-4), {:.3}s (< 1s)",
        report.pressure,
        state.residual.abs(),
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_04_bound_state_threshold() {
    let (a, b) = (1.0, 0.5);
    let threshold = 1.0 / (2.0 * b);
    let resolution = 1e-3;
    let mut switch = None;
    let mut u0 = threshold * 0.9;
    let mut prev_bound = false;
    while u0 <= threshold * 1.1 {
        let bound = deltawall::bound_state(&DeltaWallParams::new(u0, a, b).unwrap()).is_ok();
        assert!(
            bound || !prev_bound,
            "bound-state existence must be monotone in u0 (u0 = {u0})"
        );
        if bound && !prev_bound {
            switch = Some(u0);
        }
        prev_bound = bound;
        u0 += resolution;
    }
    let switch = switch.expect("existence must switch inside the scanned window");
    assert!(
        (switch - threshold).abs() <= resolution,
        "switch at {switch} vs threshold {threshold}"
    );
    println!(
        "PASS criterion 4: existence switches at u0 = {switch:.4} vs 1/(2b) = {threshold} (within {resolution})"
    );
}

#[test]
fn criterion_05_disc_gas_sign_transition() {
    let p56 = discgas::pressure(DiscParams::new(0.78, 0.56).unwrap(), 1e-5, 1e-10).unwrap();
    let p57 = discgas::pressure(DiscParams::new(0.78, 0.57).unwrap(), 1e-5, 1e-10).unwrap();
    assert!(p56 > 0.0, "P(0.78, 0.56) = {p56}");
    assert!(p57 < 0.0, "P(0.78, 0.57) = {p57}");

    let start = Instant::now();
    let curves = discgas::pressure_scan(0.5, 1.5, 201, &[0.56, 0.57], 1e-5, 1e-10).unwrap();
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "scan took {elapsed:?}");

    let crossings = curves[1].zero_crossings();
    assert!(
        !crossings.is_empty(),
        "0.57 curve must cross zero in (0.5, 1.5)"
    );
    let c0 = crossings[0];

    // stability under halving fd_step and tightening tol by 10x
    let tight = discgas::pressure_scan(0.5, 1.5, 201, &[0.57], 5e-6, 1e-11).unwrap();
    let c0_tight = tight[0].zero_crossings()[0];
    let shift = (c0 - c0_tight).abs();
    assert!(shift < 1e-3, "crossing shifted by {shift}");
    println!(
        "PASS criterion 5: P(0.78, 0.56) = {p56:.4} > 0, P(0.78, 0.57) = {p57:.4} < 0, crossing at a = {c0:.4} stable to {shift:.1e} (< 1e-3), scan {:.2}s (< 10s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_06_ideal_gas_limit() {
    let curves = discgas::pressure_scan(0.5, 1.5, 201, &[0.0], 1e-5, 1e-12).unwrap();
    let mut worst = 0.0_f64;
    for &(a, p) in &curves[0].points {
        worst = worst.max((p - 2.0 / a).abs());
    }
    assert!(worst < 1e-8, "worst |P - 2/a| = {worst:e}");
    println!("PASS criterion 6: beta*sigma = 0 gives P = 2/a, worst abs err {worst:.2e} (< 1e-8)");
}

#[test]
fn criterion_07_bessel_identity() {
    // closed form -2 pi e^{-r^2-a^2} I0(2ar) vs direct angular quadrature
    let mut worst = 0.0_f64;
    for i in 0..20 {
        let a = 0.2 + 2.8 * i as f64 / 19.0;
        for j in 0..20 {
            let r = (a * j as f64 / 19.0).min(a);
            let closed = discgas::wall_potential(r, a);
            let direct = integrate(
                |phi: f64| -(-(r * r + a * a - 2.0 * a * r * phi.cos())).exp(),
                0.0,
                2.0 * PI,
                1e-12,
            )
            .unwrap()
            .value;
            worst = worst.max((closed - direct).abs());
        }
    }
    assert!(worst < 1e-8, "worst disagreement {worst:e}");
    // and the bare special function against its series on the same range
    let mut x = 0.0;
    while x < 12.0 {
        let mut series = 1.0;
        let mut term = 1.0;
        for k in 1..200u32 {
            term *= 0.25 * x * x / ((k as f64) * (k as f64));
            series += term;
            if term < series * 1e-17 {
                break;
            }
        }
        assert!((bessel_i0(x) - series).abs() / series < 1e-12);
        x += 0.37;
    }
    println!("PASS criterion 7: closed form vs angular quadrature on 20x20 grid, worst {worst:.2e} (< 1e-8)");
}

#[test]
fn criterion_08_nogo_suite() {
    let start = Instant::now();
    let report = nogo::check_nogo(100, 42, 1.0, 5).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(report.trials, 100);
    assert_eq!(report.solver_failures, 0);
    assert!(
        report.min_per_level_pressure >= -1e-9,
        "per-level pressure {:e} below floor",
        report.min_per_level_pressure
    );
    assert_eq!(
        report.monotonicity_violations, 0,
        "eigenvalue monotonicity violated"
    );
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "PASS criterion 8: 100 random potentials, min per-level P = {:.3e} (>= -1e-9), 0 monotonicity violations, {:.1}s (< 60s)",
        report.min_per_level_pressure,
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_09_isothermal_adiabatic_agreement() {
    let samples = nogo::sample_potentials(10, 20260810, 1.0);
    let mut worst = 0.0_f64;
    for sample in &samples {
        let model = BoxModel::new(
            BoxDomain::new(1.0).unwrap(),
            sample.potential(),
            WallModel::None,
        )
        .unwrap();
        for beta in [0.5, 1.0, 2.0] {
            let gibbs = pressure_fd_gibbs(&model, beta, 5, 1001, 1e-4).unwrap();
            let states = model.solve_extrapolated(5, 1001).unwrap();
            let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
            let pops = gibbs_populations(&energies, beta).unwrap();
            let weighted: f64 = gibbs
                .per_level
                .iter()
                .zip(pops.populations())
                .map(|(v, p)| v * p)
                .sum();
            let diff = (gibbs.pressure - weighted).abs();
            worst = worst.max(diff);
            assert!(
                diff <= 1e-6,
                "beta = {beta}, {}: lnZ route {} vs weighted {weighted} (diff {diff:e})",
                sample.description,
                gibbs.pressure
            );
        }
    }
    println!(
        "PASS criterion 9: Gibbs lnZ-derivative vs weighted adiabatic, 10 potentials x 3 betas, worst diff {worst:.2e} (<= 1e-6)"
    );
}

#[test]
fn criterion_10_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_presslab");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        assert!(
            out.status.success(),
            "{:?}: {}",
            args,
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    for args in [
        vec!["nogo", "--trials", "5", "--seed", "42"],
        vec!["quantum-box", "--a", "1", "--levels", "5", "--beta", "1"],
        vec![
            "disc-gas",
            "--a-min",
            "0.7",
            "--a-max",
            "0.9",
            "--steps",
            "9",
            "--beta-sigma",
            "0.56,0.57",
        ],
        vec!["delta-wall", "--u0", "2", "--a", "1", "--b", "0.5"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "outputs differ for {args:?}");
    }
    println!("PASS criterion 10: repeated CLI runs with fixed seeds are byte-identical");
}
