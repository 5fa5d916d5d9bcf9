//! Lowest eigenpairs of symmetric tridiagonal matrices: Sturm-sequence
//! bisection for the values, shifted inverse iteration for the vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const BISECTION_TOLERANCE: f64 = 1e-13;
const INVERSE_ITERATIONS: usize = 2;
const MAX_RESTARTS: usize = 10;
const SEED: u64 = 0x5eed_2de1;

/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1), "off-diagonal length");
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Infinity norm.
    pub fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly below `lambda`, from the signs of the
    /// LDLᵀ pivots of `T − λI`.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        self.sturm_count_guarded(lambda, self.pivot_guard())
    }

    fn pivot_guard(&self) -> f64 {
        f64::MIN_POSITIVE.sqrt() * self.norm().max(1.0)
    }

    fn sturm_count_guarded(&self, lambda: f64, guard: f64) -> usize {
        if self.diag.is_empty() {
            return 0;
        }
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        if q == 0.0 {
            q = -guard;
        }
        if q < 0.0 {
            count += 1;
        }
        for (d, o) in self.diag[1..].iter().zip(&self.off) {
            q = d - lambda - o * o / q;
            if q == 0.0 {
                q = -guard;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.off[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Solves `(T − σI) y = rhs` by Gaussian elimination with partial
    /// pivoting; exactly singular pivots are perturbed to `ε‖T‖`.
    fn shifted_solve(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let tiny = f64::EPSILON * self.norm().max(1.0);
        // Row i after elimination: u0[i] x_i + u1[i] x_{i+1} + u2[i] x_{i+2}.
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut y = rhs.to_vec();
        let mut cur = [self.diag[0] - shift, if n > 1 { self.off[0] } else { 0.0 }, 0.0];
        for i in 0..n {
            if i + 1 == n {
                u0[i] = if cur[0] == 0.0 { tiny } else { cur[0] };
                break;
            }
            let below = [
                self.off[i],
                self.diag[i + 1] - shift,
                if i + 2 < n { self.off[i + 1] } else { 0.0 },
            ];
            let (pivot_row, other) = if below[0].abs() > cur[0].abs() {
                y.swap(i, i + 1);
                (below, cur)
            } else {
                (cur, below)
            };
            let piv = if pivot_row[0] == 0.0 { tiny } else { pivot_row[0] };
            u0[i] = piv;
            u1[i] = pivot_row[1];
            u2[i] = pivot_row[2];
            let f = other[0] / piv;
            y[i + 1] -= f * y[i];
            cur = [other[1] - f * pivot_row[1], other[2] - f * pivot_row[2], 0.0];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            if i + 1 < n {
                acc -= u1[i] * x[i + 1];
            }
            if i + 2 < n {
                acc -= u2[i] * x[i + 2];
            }
            x[i] = acc / u0[i];
        }
        x
    }
}

/// Eigenvalues ascending, with unit Euclidean-norm eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// The `k`-th smallest eigenvalue (0-based) by bisection on Sturm counts.
///
/// Iterates until the bracket is below `BISECTION_TOLERANCE · ‖T‖` and can no
/// longer shrink in floating point; the wall-dominated norm would otherwise
/// leave the low levels far less accurate than the discretization.
fn bisect(t: &SymTridiagonal, k: usize, lo: f64, hi: f64) -> f64 {
    let tol = BISECTION_TOLERANCE * t.norm().max(1.0);
    let guard = t.pivot_guard();
    let (mut lo, mut hi) = (lo, hi);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if t.sturm_count_guarded(mid, guard) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    debug_assert!(hi - lo <= tol);
    0.5 * (lo + hi)
}

fn normalize(v: &mut [f64]) -> f64 {
    let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nrm > 0.0 {
        v.iter_mut().for_each(|x| *x /= nrm);
    }
    nrm
}

fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
        v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
    }
}

/// The `k` lowest eigenpairs of `t`.
pub fn eigen_tridiagonal(t: &SymTridiagonal, k: usize) -> Result<Eigenpairs> {
    let n = t.dim();
    if k > n {
        return Err(Error::Config(format!(
            "requested {k} eigenpairs of a {n}x{n} matrix"
        )));
    }
    let (glo, ghi) = t.gershgorin();
    let pad = 1e-12 * t.norm().max(1.0);
    let (glo, ghi) = (glo - pad, ghi + pad);
    let norm = t.norm().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut values = Vec::with_capacity(k);
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    for idx in 0..k {
        // Levels come out ascending, so the previous one bounds this one.
        let start = values.last().map_or(glo, |&v: &f64| v - pad);
        let lambda = bisect(t, idx, start, ghi);
        let mut accepted = None;
        for _ in 0..MAX_RESTARTS {
            let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            orthogonalize(&mut v, &vectors);
            normalize(&mut v);
            for _ in 0..INVERSE_ITERATIONS {
                v = t.shifted_solve(lambda, &v);
                orthogonalize(&mut v, &vectors);
                normalize(&mut v);
            }
            if !v.iter().all(|x| x.is_finite()) {
                continue;
            }
            let tv = t.matvec(&v);
            let residual = tv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum::<f64>()
                .sqrt();
            if residual <= 1e-9 * norm {
                accepted = Some(v);
                break;
            }
        }
        let mut v = accepted.ok_or_else(|| {
            Error::Numerical(format!("inverse iteration did not converge for level {idx}"))
        })?;
        // Deterministic sign: largest component positive.
        let peak = v.iter().copied().fold(0.0_f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if peak < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        values.push(lambda);
        vectors.push(v);
    }
    Ok(Eigenpairs { values, vectors })
}
