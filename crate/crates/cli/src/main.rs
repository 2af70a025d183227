//! presslab: thermodynamic pressure of confined systems, from first
//! principles. All physical quantities are in natural units (m = hbar = 1).

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use output::{emit, render_csv, render_svg, sig12};
use presslab_core::deltawall::{self, DeltaWallParams};
use presslab_core::discgas;
use presslab_core::nogo;
use presslab_core::qbox::{
    gibbs_populations, pressure_boundary, pressure_center, pressure_fd_adiabatic,
    truncated_level_count, BoxDomain, BoxModel, InteriorPotential, MixedState, WallModel,
};

/// Numerical models of confined quantum and classical gases: box spectra,
/// pressure formulas, the delta-wall and disc-gas negative-pressure
/// examples, and the no-go verification suite. Natural units (m = hbar = 1)
/// throughout. The PRESSLAB_THREADS environment variable caps scan
/// parallelism.
#[derive(Parser)]
#[command(name = "presslab", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum and pressure of one particle in a 1D box [-a, a]
    QuantumBox(QuantumBoxArgs),
    /// Bound state of the attractive delta-wall model and its (negative) pressure
    DeltaWall(DeltaWallArgs),
    /// Classical disc gas with Gaussian wall attraction: pressure scan over the radius
    DiscGas(DiscGasArgs),
    /// Randomized verification of the no-go theorem and formula identities
    Nogo(NogoArgs),
}

#[derive(Args)]
struct QuantumBoxArgs {
    /// Box half-width a
    #[arg(long)]
    a: f64,
    /// Number of levels to solve; defaults to 5, or with --beta to the
    /// count whose Gibbs tail drops below 1e-12 of the ground level
    #[arg(long)]
    levels: Option<usize>,
    /// Inverse temperature for Gibbs populations (omit for bare levels)
    #[arg(long)]
    beta: Option<f64>,
    /// Interior grid points (rounded up to odd)
    #[arg(long, default_value_t = 2001)]
    grid: usize,
    /// Finite-difference step for the reference pressure, as a fraction of a
    #[arg(long, default_value_t = 1e-4)]
    fd_step: f64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DeltaWallArgs {
    /// Well strength u0 > 0
    #[arg(long)]
    u0: f64,
    /// Box half-width a
    #[arg(long)]
    a: f64,
    /// Well distance from each wall, 0 < b < a
    #[arg(long)]
    b: f64,
    /// Finite-difference step for the cross-check, as a fraction of a
    #[arg(long, default_value_t = 1e-4)]
    fd_step: f64,
    /// JSON report path (stdout when omitted)
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct DiscGasArgs {
    /// Smallest disc radius
    #[arg(long, default_value_t = 0.5)]
    a_min: f64,
    /// Largest disc radius
    #[arg(long, default_value_t = 1.5)]
    a_max: f64,
    /// Number of radius grid points
    #[arg(long, default_value_t = 201)]
    steps: usize,
    /// Couplings beta*sigma, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    beta_sigma: Vec<f64>,
    /// Quadrature tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Finite-difference step in a
    #[arg(long, default_value_t = 1e-5)]
    fd_step: f64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG plot path
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct NogoArgs {
    /// Number of random interior potentials
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// RNG seed
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Box half-width
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Levels per potential
    #[arg(long, default_value_t = 5)]
    levels: usize,
    /// JSON report path (stdout when omitted)
    #[arg(long)]
    report: Option<PathBuf>,
}

enum CmdError {
    /// Bad arguments: exit 2.
    Usage(String),
    /// Model/solver/IO failure: exit 1.
    Failure(String),
}

impl From<presslab_core::Error> for CmdError {
    fn from(e: presslab_core::Error) -> Self {
        CmdError::Failure(e.to_string())
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Failure(format!("io error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::QuantumBox(args) => cmd_quantum_box(args),
        Command::DeltaWall(args) => cmd_delta_wall(args),
        Command::DiscGas(args) => cmd_disc_gas(args),
        Command::Nogo(args) => cmd_nogo(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<(), CmdError> {
    if cond {
        Ok(())
    } else {
        Err(CmdError::Usage(msg.into()))
    }
}

fn cmd_quantum_box(args: QuantumBoxArgs) -> Result<(), CmdError> {
    require(args.a > 0.0 && args.a.is_finite(), "--a must be > 0")?;
    require(args.levels != Some(0), "--levels must be >= 1")?;
    require(args.fd_step > 0.0, "--fd-step must be > 0")?;
    if let Some(b) = args.beta {
        require(b >= 0.0 && b.is_finite(), "--beta must be >= 0")?;
    }

    let model = BoxModel::new(
        BoxDomain::new(args.a)?,
        InteriorPotential::zero(),
        WallModel::None,
    )?;
    let levels = match (args.levels, args.beta) {
        (Some(n), _) => n,
        (None, Some(beta)) if beta > 0.0 => {
            let (count, tail) = truncated_level_count(&model, beta, args.grid)?;
            eprintln!("gibbs truncation: {count} levels, tail p_last/p_0 = {tail:.3e}");
            count
        }
        _ => 5,
    };
    let states = model.solve_extrapolated(levels, args.grid)?;
    let pops = match args.beta {
        Some(beta) => {
            let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
            gibbs_populations(&energies, beta)?
        }
        None => MixedState::uniform(levels)?,
    };
    let p_ex = vec![0.0; levels];
    let center = pressure_center(&states, &pops)?;
    let boundary = pressure_boundary(&states, &pops, &p_ex)?;
    let fd = pressure_fd_adiabatic(&model, &pops, args.grid, args.fd_step * args.a)?;

    let with_pops = args.beta.is_some();
    let mut header = vec!["n", "energy", "p_center", "p_boundary", "p_fd"];
    if with_pops {
        header.push("population");
    }
    let mut rows = Vec::with_capacity(levels + 1);
    for (i, state) in states.iter().enumerate() {
        let mut row = vec![
            (i + 1).to_string(),
            sig12(state.energy),
            sig12(center.per_level[i]),
            sig12(boundary.per_level[i]),
            sig12(fd.per_level[i]),
        ];
        if with_pops {
            row.push(sig12(pops.populations()[i]));
        }
        rows.push(row);
    }
    if with_pops {
        // population-weighted totals over the truncated level set
        let mean_energy: f64 = states
            .iter()
            .zip(pops.populations())
            .map(|(s, p)| p * s.energy)
            .sum();
        rows.push(vec![
            "gibbs".into(),
            sig12(mean_energy),
            sig12(center.pressure),
            sig12(boundary.pressure),
            sig12(fd.pressure),
            sig12(pops.populations().iter().sum()),
        ]);
    }
    emit(args.out.as_deref(), &render_csv(&header, &rows))?;
    Ok(())
}

#[derive(Serialize)]
struct DeltaWallJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<f64>,
    #[serde(rename = "E_m", skip_serializing_if = "Option::is_none")]
    e_m: Option<f64>,
    #[serde(rename = "P_center", skip_serializing_if = "Option::is_none")]
    p_center: Option<f64>,
    #[serde(rename = "P_fd", skip_serializing_if = "Option::is_none")]
    p_fd: Option<f64>,
    bound: bool,
}

fn cmd_delta_wall(args: DeltaWallArgs) -> Result<(), CmdError> {
    require(args.u0 > 0.0 && args.u0.is_finite(), "--u0 must be > 0")?;
    require(args.a > 0.0 && args.a.is_finite(), "--a must be > 0")?;
    require(
        args.b > 0.0 && args.b < args.a,
        "--b must satisfy 0 < b < a",
    )?;
    require(args.fd_step > 0.0, "--fd-step must be > 0")?;

    let params = DeltaWallParams::new(args.u0, args.a, args.b)?;
    match deltawall::bound_state(&params) {
        Ok(state) => {
            let p_center = state.energy * state.amp_center * state.amp_center;
            let p_fd = deltawall::fd_pressure(&params, args.fd_step * args.a)?;
            let report = DeltaWallJson {
                k: Some(state.k),
                e_m: Some(state.energy),
                p_center: Some(p_center),
                p_fd: Some(p_fd),
                bound: true,
            };
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            emit(args.report.as_deref(), &format!("{json}\n"))?;
            Ok(())
        }
        Err(e @ presslab_core::Error::NoBoundState { .. }) => {
            let report = DeltaWallJson {
                k: None,
                e_m: None,
                p_center: None,
                p_fd: None,
                bound: false,
            };
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            emit(args.report.as_deref(), &format!("{json}\n"))?;
            Err(CmdError::Failure(e.to_string()))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_disc_gas(args: DiscGasArgs) -> Result<(), CmdError> {
    require(args.steps >= 2, "--steps must be >= 2")?;
    require(
        args.a_min > 0.0 && args.a_max > args.a_min,
        "need 0 < a-min < a-max",
    )?;
    require(!args.beta_sigma.is_empty(), "--beta-sigma must be nonempty")?;
    require(
        args.beta_sigma.iter().all(|b| *b >= 0.0 && b.is_finite()),
        "--beta-sigma values must be >= 0",
    )?;
    require(args.tol > 0.0, "--tol must be > 0")?;
    require(
        args.fd_step > 0.0 && args.fd_step < args.a_min / 10.0,
        "--fd-step must satisfy 0 < fd-step < a-min/10",
    )?;

    let curves = discgas::pressure_scan_parallel(
        args.a_min,
        args.a_max,
        args.steps,
        &args.beta_sigma,
        args.fd_step,
        args.tol,
        thread_cap(),
    )?;

    let mut rows = Vec::with_capacity(args.steps * curves.len());
    for c in &curves {
        for &(a, p) in &c.points {
            rows.push(vec![sig12(a), sig12(c.beta_sigma), sig12(p)]);
        }
    }
    emit(
        args.out.as_deref(),
        &render_csv(&["a", "beta_sigma", "pressure"], &rows),
    )?;
    if let Some(svg_path) = &args.svg {
        emit(
            Some(svg_path),
            &render_svg(&curves, "disc radius a", "pressure"),
        )?;
    }
    Ok(())
}

fn cmd_nogo(args: NogoArgs) -> Result<(), CmdError> {
    require(args.trials >= 1, "--trials must be >= 1")?;
    require(args.a > 0.0 && args.a.is_finite(), "--a must be > 0")?;
    require(args.levels >= 1, "--levels must be >= 1")?;

    let report = nogo::check_nogo(args.trials, args.seed, args.a, args.levels)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    emit(args.report.as_deref(), &format!("{json}\n"))?;
    if report.has_violations() {
        return Err(CmdError::Failure(format!(
            "no-go violations found: min per-level pressure {:e}, {} monotonicity violations, max formula disagreement {:e}",
            report.min_per_level_pressure,
            report.monotonicity_violations,
            report.max_formula_disagreement
        )));
    }
    Ok(())
}

/// Parallelism cap from PRESSLAB_THREADS, defaulting to the machine size.
fn thread_cap() -> usize {
    match std::env::var("PRESSLAB_THREADS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => {
                eprintln!("warning: ignoring invalid PRESSLAB_THREADS={v}");
                default_threads()
            }
        },
        Err(_) => default_threads(),
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
