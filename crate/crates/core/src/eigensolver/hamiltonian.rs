//! Finite-difference Hamiltonians on uniform grids with Dirichlet walls.

use std::f64::consts::FRAC_PI_2;

use super::tridiag::SymTridiagonal;
use crate::error::{Error, Result};
use crate::model::{mass, WellParams};

/// Interior nodes `lo + i·h`, `i = 1..n`, for `n` subintervals of `[lo, hi]`.
pub fn interior_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    (1..n).map(|i| lo + i as f64 * h).collect()
}

fn sample(grid: &[f64], potential: &dyn Fn(f64) -> f64) -> Result<Vec<f64>> {
    grid.iter()
        .enumerate()
        .map(|(node, &c)| {
            let value = potential(c);
            if value.is_finite() {
                Ok(value)
            } else {
                Err(Error::SingularPotential {
                    node,
                    coordinate: c,
                    value,
                })
            }
        })
        .collect()
}

/// `−f''(t) + V(t)` on `(lo, hi)` with `n` subintervals.
pub fn build_uniform_hamiltonian(
    lo: f64,
    hi: f64,
    potential: &dyn Fn(f64) -> f64,
    n: usize,
) -> Result<SymTridiagonal> {
    build_flux_hamiltonian(lo, hi, &|_| 1.0, potential, n)
}

/// Constant-mass operator `−d²/du² + U(u)` on `(−π/2, π/2)`.
pub fn build_hamiltonian_u(potential: &dyn Fn(f64) -> f64, n: usize) -> Result<SymTridiagonal> {
    build_uniform_hamiltonian(-FRAC_PI_2, FRAC_PI_2, potential, n)
}

/// Conservative discretization of `−(f ψ')' + V ψ`: the coefficient `f` is
/// sampled at half-nodes so that the matrix is symmetric by construction.
pub fn build_flux_hamiltonian(
    lo: f64,
    hi: f64,
    coefficient: &dyn Fn(f64) -> f64,
    potential: &dyn Fn(f64) -> f64,
    n: usize,
) -> Result<SymTridiagonal> {
    if n < 2 {
        return Err(Error::Config(format!("need at least 2 subintervals, got {n}")));
    }
    if !(hi > lo) {
        return Err(Error::Config(format!("empty interval ({lo}, {hi})")));
    }
    let h = (hi - lo) / n as f64;
    let grid = interior_grid(lo, hi, n);
    let v = sample(&grid, potential)?;
    let flux: Vec<f64> = (0..n)
        .map(|i| coefficient(lo + (i as f64 + 0.5) * h))
        .collect();
    if let Some(i) = flux.iter().position(|f| !f.is_finite() || *f < 0.0) {
        return Err(Error::Numerical(format!(
            "kinetic coefficient {} at half-node {i} is not a finite non-negative number",
            flux[i]
        )));
    }
    let h2 = h * h;
    let diag = (0..n - 1)
        .map(|i| (flux[i] + flux[i + 1]) / h2 + v[i])
        .collect();
    let off = (1..n - 1).map(|i| -flux[i] / h2).collect();
    Ok(SymTridiagonal::new(diag, off))
}

/// BenDaniel-Duke operator `−d/dx (1/M) d/dx + V(x)` on `(a, b)`.
pub fn build_hamiltonian_x(
    p: &WellParams,
    potential: &dyn Fn(f64) -> f64,
    n: usize,
) -> Result<SymTridiagonal> {
    let inv_mass = |x: f64| mass(p, x).map(|m| 1.0 / m).unwrap_or(f64::NAN);
    build_flux_hamiltonian(p.a, p.b, &inv_mass, potential, n)
}
