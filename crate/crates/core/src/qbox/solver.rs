//! Dirichlet eigensolver on a uniform grid.
//!
//! The 3-point Laplacian makes -psi''/2 + v psi = E psi an exactly
//! symmetric tridiagonal eigenproblem. The lowest levels are isolated by
//! Sturm-sequence bisection and their vectors recovered by inverse
//! iteration with partial pivoting. Each eigenvalue is then polished with
//! a Rayleigh quotient evaluated in differenced form,
//!     E = sum (v_{i+1}-v_i)^2 / (2h^2) + sum v(x_i) v_i^2,
//! which is conditioned O(eps) instead of the O(eps/h^2) of the raw
//! matrix arithmetic. Without the polish, finite-difference pressure
//! derivatives of the spectrum drown in eigenvalue round-off.

use crate::error::{Error, Result};
use crate::qbox::{BoxDomain, Eigenstate, InteriorPotential};

/// Lowest `n_levels` eigenpairs of -psi''/2 + v psi = E psi with
/// psi(+-a) = 0, energies ascending. `grid_size` counts interior points
/// and is rounded up to odd so that x = 0 lies on the grid.
pub fn solve_box(
    domain: BoxDomain,
    potential: &InteriorPotential,
    n_levels: usize,
    grid_size: usize,
) -> Result<Vec<Eigenstate>> {
    let v = |x: f64| potential.eval(x);
    solve_grid_potential(domain, &v, n_levels, grid_size)
}

/// [`solve_box`] on grids h and h/2 with Richardson extrapolation of the
/// energies and of the boundary/center scalars; the h/2 wavefunction
/// samples are kept. Error estimates are the Richardson gaps.
pub fn solve_box_extrapolated(
    domain: BoxDomain,
    potential: &InteriorPotential,
    n_levels: usize,
    grid_size: usize,
) -> Result<Vec<Eigenstate>> {
    let v = |x: f64| potential.eval(x);
    solve_grid_potential_extrapolated(domain, &v, n_levels, grid_size)
}

pub(crate) fn solve_grid_potential(
    domain: BoxDomain,
    v: &dyn Fn(f64) -> f64,
    n_levels: usize,
    grid_size: usize,
) -> Result<Vec<Eigenstate>> {
    let n = validated_grid(n_levels, grid_size)?;
    solve_on_n(domain, v, n_levels, n)
}

pub(crate) fn solve_grid_potential_extrapolated(
    domain: BoxDomain,
    v: &dyn Fn(f64) -> f64,
    n_levels: usize,
    grid_size: usize,
) -> Result<Vec<Eigenstate>> {
    let n = validated_grid(n_levels, grid_size)?;
    let coarse = solve_on_n(domain, v, n_levels, n)?;
    // 2n+1 interior points halve the spacing and keep x = 0 on the grid
    let fine = solve_on_n(domain, v, n_levels, 2 * n + 1)?;
    let rich = |f: f64, c: f64| (4.0 * f - c) / 3.0;
    Ok(fine
        .into_iter()
        .zip(coarse)
        .map(|(f, c)| {
            let mut s = Eigenstate::new_grid(
                rich(f.energy, c.energy),
                f.half_width,
                f.psi,
                rich(f.psi_center, c.psi_center),
                rich(f.dpsi_center, c.dpsi_center),
                (
                    rich(f.dpsi_walls.0, c.dpsi_walls.0),
                    rich(f.dpsi_walls.1, c.dpsi_walls.1),
                ),
                0.0,
            );
            s.energy_error = (f.energy - c.energy).abs() / 3.0;
            s
        })
        .collect())
}

fn validated_grid(n_levels: usize, grid_size: usize) -> Result<usize> {
    if n_levels == 0 {
        return Err(Error::InvalidInput("n_levels must be >= 1".into()));
    }
    if grid_size < 64 {
        return Err(Error::InvalidInput(format!(
            "grid_size {grid_size} must be >= 64"
        )));
    }
    let n = if grid_size.is_multiple_of(2) {
        grid_size + 1
    } else {
        grid_size
    };
    if n_levels * 8 > n {
        return Err(Error::GridTooCoarse {
            requested: n_levels,
            grid_size: n,
            min_grid: n_levels * 8,
        });
    }
    Ok(n)
}

fn solve_on_n(
    domain: BoxDomain,
    v: &dyn Fn(f64) -> f64,
    n_levels: usize,
    n: usize,
) -> Result<Vec<Eigenstate>> {
    let a = domain.half_width();
    let h = 2.0 * a / (n + 1) as f64;
    let inv_h2 = 1.0 / (h * h);

    let mut vx = Vec::with_capacity(n);
    for i in 0..n {
        let x = -a + h * (i + 1) as f64;
        let vi = v(x);
        if !vi.is_finite() {
            return Err(Error::InvalidInput(format!(
                "potential not finite at x = {x}: {vi}"
            )));
        }
        vx.push(vi);
    }

    let diag: Vec<f64> = vx.iter().map(|&vi| inv_h2 + vi).collect();
    let off = -0.5 * inv_h2;
    let off2 = off * off;

    // Gershgorin bounds; the +-1/h^2 kinetic parts cancel at the bottom.
    let (dmin, dmax) = diag
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| {
            (lo.min(d), hi.max(d))
        });
    let glo = dmin - 2.0 * off.abs();
    let ghi = dmax + 2.0 * off.abs();
    let norm = dmax.abs().max(dmin.abs()) + 2.0 * off.abs();
    let pivmin = f64::MIN_POSITIVE * (1.0 + off2);

    let mut states = Vec::with_capacity(n_levels);
    let mut found: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n_levels);
    let cluster_tol = norm * 1e-12 + 1e-12;

    for k in 0..n_levels {
        let lambda = bisect_eigenvalue(&diag, off2, pivmin, k, glo, ghi);
        let peers: Vec<&Vec<f64>> = found
            .iter()
            .filter(|(l, _)| (l - lambda).abs() <= cluster_tol)
            .map(|(_, vec)| vec)
            .collect();
        let vec = inverse_iteration(&diag, off, lambda, norm, k as u64, &peers)?;
        let energy = rayleigh_quotient(&vec, &vx, inv_h2);
        states.push(build_state(energy, a, h, &vec));
        found.push((lambda, vec));
    }
    Ok(states)
}

/// Number of eigenvalues strictly below x, by the Sturm sequence of the
/// shifted LDL^T pivots.
fn sturm_count(diag: &[f64], off2: f64, pivmin: f64, x: f64) -> usize {
    let mut count = 0usize;
    let mut q = diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for &d in &diag[1..] {
        q = d - x - off2 / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th smallest eigenvalue (0-based) to near machine precision.
fn bisect_eigenvalue(diag: &[f64], off2: f64, pivmin: f64, k: usize, glo: f64, ghi: f64) -> f64 {
    let mut lo = glo;
    let mut hi = ghi;
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval exhausted in floating point
        }
        if sturm_count(diag, off2, pivmin, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + 2.0 * pivmin {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Inverse iteration for the eigenvector at shift `lambda`, with
/// Gram-Schmidt re-orthogonalization against earlier vectors of a
/// near-degenerate cluster. Returns a unit vector.
fn inverse_iteration(
    diag: &[f64],
    off: f64,
    lambda: f64,
    norm: f64,
    level: u64,
    peers: &[&Vec<f64>],
) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut x = seeded_start(n, level);
    let mut shift = lambda;
    let res_tol = 100.0 * f64::EPSILON * norm;

    for attempt in 0..4 {
        let lu = match LuTri::factor(diag, off, shift) {
            Some(lu) => lu,
            None => {
                shift += norm * f64::EPSILON * (attempt + 1) as f64;
                continue;
            }
        };
        for _ in 0..8 {
            let mut y = lu.solve(&x);
            for p in peers {
                let dot: f64 = y.iter().zip(p.iter()).map(|(a, b)| a * b).sum();
                for (yi, pi) in y.iter_mut().zip(p.iter()) {
                    *yi -= dot * pi;
                }
            }
            let nrm = y.iter().map(|t| t * t).sum::<f64>().sqrt();
            if !nrm.is_finite() || nrm == 0.0 {
                break;
            }
            for t in &mut y {
                *t /= nrm;
            }
            let res = residual_inf(diag, off, shift, &y);
            x = y;
            if res <= res_tol {
                return Ok(x);
            }
        }
        let res = residual_inf(diag, off, shift, &x);
        if res <= res_tol * 100.0 {
            return Ok(x);
        }
        shift += norm * f64::EPSILON * (attempt + 1) as f64;
    }
    Err(Error::InvalidInput(format!(
        "inverse iteration failed to converge at level {level} (shift {lambda})"
    )))
}

fn residual_inf(diag: &[f64], off: f64, lambda: f64, x: &[f64]) -> f64 {
    let n = x.len();
    let mut worst = 0.0_f64;
    for i in 0..n {
        let mut r = (diag[i] - lambda) * x[i];
        if i > 0 {
            r += off * x[i - 1];
        }
        if i + 1 < n {
            r += off * x[i + 1];
        }
        worst = worst.max(r.abs());
    }
    worst
}

/// Deterministic pseudo-random start vector (splitmix64 stream).
fn seeded_start(n: usize, level: u64) -> Vec<f64> {
    let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ (level.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    let mut next = move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    (0..n)
        .map(|_| (next() >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        .collect()
}

/// Energy functional of a unit grid vector, evaluated in differenced form.
fn rayleigh_quotient(x: &[f64], vx: &[f64], inv_h2: f64) -> f64 {
    let n = x.len();
    let mut kinetic = x[0] * x[0] + x[n - 1] * x[n - 1];
    for i in 0..n - 1 {
        let d = x[i + 1] - x[i];
        kinetic += d * d;
    }
    kinetic *= 0.5 * inv_h2;
    let potential: f64 = x.iter().zip(vx.iter()).map(|(xi, vi)| vi * xi * xi).sum();
    let dot: f64 = x.iter().map(|t| t * t).sum();
    (kinetic + potential) / dot
}

fn build_state(energy: f64, a: f64, h: f64, vec: &[f64]) -> Eigenstate {
    let n = vec.len();
    // fix the overall sign: first significant lobe positive
    let maxabs = vec.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
    let flip = vec
        .iter()
        .find(|t| t.abs() > 1e-8 * maxabs)
        .map(|t| *t < 0.0)
        .unwrap_or(false);
    let scale = if flip { -1.0 } else { 1.0 } / h.sqrt();

    let mut psi = Vec::with_capacity(n + 2);
    psi.push(0.0);
    psi.extend(vec.iter().map(|t| t * scale));
    psi.push(0.0);

    let mid = n.div_ceil(2); // x = 0 (n odd)
    let psi_center = psi[mid];
    let dpsi_center = (psi[mid + 1] - psi[mid - 1]) / (2.0 * h);
    // one-sided second-order stencils; boundary samples are exact zeros
    let dpsi_left = (4.0 * psi[1] - psi[2]) / (2.0 * h);
    let dpsi_right = (psi[n - 1] - 4.0 * psi[n]) / (2.0 * h);

    Eigenstate::new_grid(
        energy,
        a,
        psi,
        psi_center,
        dpsi_center,
        (dpsi_left, dpsi_right),
        0.0,
    )
}

/// LU factorization of T - shift*I (tridiagonal, constant off-diagonal)
/// with partial pivoting; the pivoted U gains a second superdiagonal.
struct LuTri {
    dl: Vec<f64>,  // multipliers
    d: Vec<f64>,   // U diagonal
    du: Vec<f64>,  // U first superdiagonal
    du2: Vec<f64>, // U second superdiagonal
    swapped: Vec<bool>,
}

impl LuTri {
    fn factor(diag: &[f64], off: f64, shift: f64) -> Option<LuTri> {
        let n = diag.len();
        let mut dl = vec![off; n - 1];
        let mut d: Vec<f64> = diag.iter().map(|t| t - shift).collect();
        let mut du = vec![off; n - 1];
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n - 1];
        let tiny = f64::MIN_POSITIVE / f64::EPSILON;

        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < tiny {
                    d[i] = tiny.copysign(if d[i] == 0.0 { 1.0 } else { d[i] });
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1].abs() < tiny {
            d[n - 1] = tiny.copysign(if d[n - 1] == 0.0 { 1.0 } else { d[n - 1] });
        }
        if d.iter().any(|t| !t.is_finite()) {
            return None;
        }
        Some(LuTri {
            dl,
            d,
            du,
            du2,
            swapped,
        })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut x = b.to_vec();
        for i in 0..n - 1 {
            if self.swapped[i] {
                x.swap(i, i + 1);
            }
            let t = self.dl[i] * x[i];
            x[i + 1] -= t;
        }
        x[n - 1] /= self.d[n - 1];
        if n >= 2 {
            x[n - 2] = (x[n - 2] - self.du[n - 2] * x[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.du[i] * x[i + 1] - self.du2[i] * x[i + 2]) / self.d[i];
        }
        x
    }
}
