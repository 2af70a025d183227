use thiserror::Error;

/// Errors shared across the numerical kernels and physics models.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no sign change on [{lo}, {hi}]: g(lo) = {g_lo:e}, g(hi) = {g_hi:e}")]
    NoBracket {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error(
        "root finder stalled after {iterations} iterations (residual {residual:e} > tol {tol:e})"
    )]
    RootNotConverged {
        iterations: usize,
        residual: f64,
        tol: f64,
    },

    #[error("quadrature did not converge within subdivision depth {max_depth} (worst interval [{lo}, {hi}])")]
    QuadratureNotConverged { max_depth: usize, lo: f64, hi: f64 },

    #[error("grid too coarse: {requested} levels need at least {min_grid} interior points, got {grid_size}")]
    GridTooCoarse {
        requested: usize,
        grid_size: usize,
        min_grid: usize,
    },

    #[error(
        "no bound state: u0 = {u0} is at or below the existence threshold 1/(2b) = {threshold}"
    )]
    NoBoundState { u0: f64, threshold: f64 },

    #[error("level count mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("x = {x} outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("wall model not supported here: {0}")]
    UnsupportedWall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
