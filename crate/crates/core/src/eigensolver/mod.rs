//! Finite-difference eigensolver for the well, in either the constant-mass
//! angle variable or directly in position.
//!
//! ```
//! use pdmwell::eigensolver::{solve, SolverConfig};
//! use pdmwell::{ExtensionKind, WellParams};
//!
//! let p = WellParams::reference();
//! let r = solve(&p, ExtensionKind::X1, &SolverConfig::default()).unwrap();
//! assert!((r.energies[0] - 3.25).abs() < 1e-5);
//! ```

mod hamiltonian;
mod tridiag;

pub use hamiltonian::{
    build_flux_hamiltonian, build_hamiltonian_u, build_hamiltonian_x, build_uniform_hamiltonian,
    interior_grid,
};
pub use tridiag::{eigen_tridiagonal, Eigenpairs, SymTridiagonal};

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::analytic::PdmEigenfunction;
use crate::error::{Error, Result};
use crate::model::{
    ensure_valid, mass_derivatives, mass_term, pct_map, v_eff, x_of_u, ExtensionKind, PctMap,
    WellParams,
};

/// Discretization variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    /// Angle `u ∈ (−π/2, π/2)` with unit mass.
    UVariable,
    /// Position `x ∈ (a, b)` with the full mass profile.
    XVariable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Number of grid subintervals `N`; the matrix has `N − 1` rows.
    pub grid_points: usize,
    pub space: Space,
    /// Also solve on `2N` and extrapolate with an `h²` error model.
    pub richardson: bool,
    pub levels: usize,
    /// Fraction of the interval dropped at each end before imposing walls.
    pub boundary_inset: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_points: 2048,
            space: Space::UVariable,
            richardson: true,
            levels: 6,
            boundary_inset: 0.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.levels == 0 {
            return Err(Error::Config("at least one level must be requested".into()));
        }
        if self.grid_points < 64 {
            return Err(Error::Config(format!(
                "grid_points = {} is below the minimum of 64",
                self.grid_points
            )));
        }
        if self.grid_points < 8 * self.levels {
            return Err(Error::Config(format!(
                "grid_points = {} is below 8 × levels = {}",
                self.grid_points,
                8 * self.levels
            )));
        }
        if !(0.0..0.5).contains(&self.boundary_inset) {
            return Err(Error::Config(format!(
                "boundary_inset = {} must lie in [0, 0.5)",
                self.boundary_inset
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub space: Space,
    /// Well energies `E`, ascending (already mapped back from the angle
    /// variable when `space` is `UVariable`).
    pub energies: Vec<f64>,
    /// Eigenvectors on `grid`, normalized so that `h Σ v² = 1`. With
    /// extrapolation these come from the finer grid.
    pub vectors: Vec<Vec<f64>>,
    pub grid: Vec<f64>,
    /// `|E(2N) − E(N)| / 3` per level when extrapolating.
    pub estimated_error: Option<Vec<f64>>,
}

struct Discretized {
    energies: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    grid: Vec<f64>,
}

/// Problem set up in the chosen variable: interval, kinetic coefficient,
/// potential, and the affine map from matrix eigenvalue to well energy.
struct Problem<'a> {
    lo: f64,
    hi: f64,
    coefficient: Box<dyn Fn(f64) -> f64 + 'a>,
    potential: Box<dyn Fn(f64) -> f64 + 'a>,
    scale: f64,
    shift: f64,
}

impl Problem<'_> {
    fn energy(&self, eigenvalue: f64) -> f64 {
        self.scale * eigenvalue + self.shift
    }

    fn matrix(&self, n: usize, inset: f64) -> Result<(SymTridiagonal, f64, f64)> {
        let cut = inset * (self.hi - self.lo);
        let (lo, hi) = (self.lo + cut, self.hi - cut);
        let t = build_flux_hamiltonian(lo, hi, &*self.coefficient, &*self.potential, n)?;
        Ok((t, lo, hi))
    }

    fn discretize(&self, n: usize, config: &SolverConfig) -> Result<Discretized> {
        let (t, lo, hi) = self.matrix(n, config.boundary_inset)?;
        if config.levels > t.dim() {
            return Err(Error::Config(format!(
                "{} levels requested from a {}-row matrix",
                config.levels,
                t.dim()
            )));
        }
        let pairs = eigen_tridiagonal(&t, config.levels)?;
        let h = (hi - lo) / n as f64;
        let inv = 1.0 / h.sqrt();
        Ok(Discretized {
            energies: pairs.values.iter().map(|&e| self.energy(e)).collect(),
            vectors: pairs
                .vectors
                .into_iter()
                .map(|v| v.into_iter().map(|c| c * inv).collect())
                .collect(),
            grid: interior_grid(lo, hi, n),
        })
    }
}

fn problem<'a>(
    p: &'a WellParams,
    potential: &'a dyn Fn(f64) -> f64,
    space: Space,
) -> Problem<'a> {
    match space {
        Space::XVariable => Problem {
            lo: p.a,
            hi: p.b,
            coefficient: Box::new(move |x| {
                crate::model::mass(p, x).map(|m| 1.0 / m).unwrap_or(f64::NAN)
            }),
            potential: Box::new(potential),
            scale: 1.0,
            shift: 0.0,
        },
        Space::UVariable => {
            let PctMap { a_bar, c_bar, .. } = pct_map(p);
            let a2 = a_bar * a_bar;
            Problem {
                lo: -FRAC_PI_2,
                hi: FRAC_PI_2,
                coefficient: Box::new(|_| 1.0),
                potential: Box::new(move |u| {
                    let x = match x_of_u(p, u) {
                        Ok(x) => x,
                        Err(_) => return f64::NAN,
                    };
                    match mass_term(p, x) {
                        Ok(mt) => (potential(x) - mt - c_bar) / a2,
                        Err(_) => f64::NAN,
                    }
                }),
                scale: a2,
                shift: c_bar,
            }
        }
    }
}

fn well_potential(p: &WellParams, kind: ExtensionKind) -> impl Fn(f64) -> f64 + '_ {
    move |x| v_eff(p, x, kind).unwrap_or(f64::NAN)
}

/// Lowest `config.levels` eigenpairs of the well with potential `kind`.
pub fn solve(p: &WellParams, kind: ExtensionKind, config: &SolverConfig) -> Result<EigenResult> {
    ensure_valid(p, kind)?;
    solve_with_potential(p, &well_potential(p, kind), config)
}

/// Lowest eigenpairs for the mass profile of `p` with an arbitrary potential
/// `V(x)`. Non-finite samples at grid nodes are reported as errors.
pub fn solve_with_potential(
    p: &WellParams,
    potential: &dyn Fn(f64) -> f64,
    config: &SolverConfig,
) -> Result<EigenResult> {
    config.validate()?;
    let prob = problem(p, potential, config.space);
    let coarse = prob.discretize(config.grid_points, config)?;
    if !config.richardson {
        return Ok(EigenResult {
            space: config.space,
            energies: coarse.energies,
            vectors: coarse.vectors,
            grid: coarse.grid,
            estimated_error: None,
        });
    }
    let fine = prob.discretize(2 * config.grid_points, config)?;
    let (energies, errors) = coarse
        .energies
        .iter()
        .zip(&fine.energies)
        .map(|(&e1, &e2)| ((4.0 * e2 - e1) / 3.0, (e2 - e1).abs() / 3.0))
        .unzip();
    Ok(EigenResult {
        space: config.space,
        energies,
        vectors: fine.vectors,
        grid: fine.grid,
        estimated_error: Some(errors),
    })
}

/// Sturm-count probe of one discretized problem; the matrix is assembled
/// once and can be queried at many energies.
pub struct LevelCounter {
    matrix: SymTridiagonal,
    scale: f64,
    shift: f64,
}

impl LevelCounter {
    /// Assembles the unextrapolated matrix of `config`.
    pub fn new(p: &WellParams, potential: &dyn Fn(f64) -> f64, config: &SolverConfig) -> Result<Self> {
        config.validate()?;
        let prob = problem(p, potential, config.space);
        let (matrix, _, _) = prob.matrix(config.grid_points, config.boundary_inset)?;
        Ok(Self {
            matrix,
            scale: prob.scale,
            shift: prob.shift,
        })
    }

    /// Number of discrete levels strictly below `energy`.
    pub fn below(&self, energy: f64) -> usize {
        self.matrix.sturm_count((energy - self.shift) / self.scale)
    }
}

/// Number of discrete levels strictly below `energy` on the unextrapolated
/// grid of `config`, from a Sturm count.
pub fn count_below(
    p: &WellParams,
    potential: &dyn Fn(f64) -> f64,
    config: &SolverConfig,
    energy: f64,
) -> Result<usize> {
    Ok(LevelCounter::new(p, potential, config)?.below(energy))
}

/// [`count_below`] for the well potential of `kind`.
pub fn count_levels_below(
    p: &WellParams,
    kind: ExtensionKind,
    config: &SolverConfig,
    energy: f64,
) -> Result<usize> {
    ensure_valid(p, kind)?;
    count_below(p, &well_potential(p, kind), config, energy)
}

/// Largest scaled residual `|−(ψ'/M)' + Vψ − Eψ| / (|E| max|ψ|)` of the
/// analytic state `n` over `points`.
pub fn residual(p: &WellParams, kind: ExtensionKind, n: i64, points: &[f64]) -> Result<f64> {
    let state = PdmEigenfunction::new(p, n, kind)?;
    residual_of(&state, &|x| v_eff(p, x, kind), points)
}

/// Residual of a prepared state against an arbitrary potential.
pub fn residual_of(
    state: &PdmEigenfunction,
    potential: &dyn Fn(f64) -> Result<f64>,
    points: &[f64],
) -> Result<f64> {
    let p = &state.params;
    let e = state.energy();
    let mut worst = 0.0_f64;
    let mut peak = 0.0_f64;
    for &x in points {
        let psi = state.eval(x)?;
        let (m, m1, _) = mass_derivatives(p, x)?;
        let kinetic = -(psi.d2 / m - psi.d1 * m1 / (m * m));
        let r = kinetic + potential(x)? * psi.value - e * psi.value;
        worst = worst.max(r.abs());
        peak = peak.max(psi.value.abs());
    }
    if peak == 0.0 {
        return Err(Error::Numerical("wavefunction vanishes at every sample".into()));
    }
    Ok(worst / (e.abs() * peak))
}
