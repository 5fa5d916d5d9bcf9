//! Constructive X1-Jacobi exceptional polynomials.
//!
//! The degree-(n+1) polynomial `q` is the polynomial factor of the n-th
//! eigenfunction of the rationally extended Scarf I potential,
//!
//! ```text
//! φ(u) = (1−s)^((A−B)/2) (1+s)^((A+B)/2) q(s) / (2A−1−2Bs),   s = sin u,
//! ```
//!
//! with eigenvalue `(A+n)²`. Substituting a Chebyshev expansion of `q` into
//! the differential equation at `2(n+2)` Chebyshev points gives a
//! homogeneous linear system whose one-dimensional nullspace is `q`.

use std::f64::consts::PI;

use super::{jacobi_leading_coefficient, Polynomial};
use crate::error::{Error, Result};

/// Pivots below this fraction of the matrix norm count as zero.
const NULLSPACE_THRESHOLD: f64 = 1e-10;

/// Degree-(n+1) X1-Jacobi polynomial `P̂_{n+1}^(α,β)`.
///
/// The Scarf I parameters are recovered as `A = (α+β+1)/2`,
/// `B = (β−α)/2`. The scale is fixed by the leading coefficient
/// `|lc| = lc(P_n^(α,β)) / 2` and the sign by `q(1) > 0`; with that scale the
/// extended Scarf eigenfunction carries the standard closed-form
/// normalization constant.
pub fn x1_jacobi(n: u32, alpha: f64, beta: f64) -> Result<Polynomial> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::Domain {
            what: "X1-Jacobi parameters must be finite",
            value: if alpha.is_finite() { beta } else { alpha },
        });
    }
    if alpha == beta {
        return Err(Error::Domain {
            what: "X1-Jacobi polynomials require beta != alpha",
            value: beta,
        });
    }
    let a_cap = 0.5 * (alpha + beta + 1.0);
    let b_cap = 0.5 * (beta - alpha);
    let energy = (a_cap + f64::from(n)).powi(2);
    let cheb = collocation_nullspace(a_cap, b_cap, energy, n as usize + 1)?;
    let q = Polynomial::new(chebyshev_to_monomial(&cheb));

    let target = 0.5 * jacobi_leading_coefficient(n, alpha, beta);
    let lc = q.leading_coefficient();
    let mut scale = target / lc.abs();
    let at_one = q.eval(1.0);
    let sign_ref = if at_one != 0.0 { at_one } else { lc };
    if sign_ref < 0.0 {
        scale = -scale;
    }
    Ok(q.scaled(scale))
}

/// Rescales to the alternative convention
/// `P̂_{1,n+1} = (α+n)(β−α)/(α+n+1) · P̂_{n+1}`.
pub fn x1_to_alt_normalization(
    n: u32,
    alpha: f64,
    beta: f64,
    p_hat: &Polynomial,
) -> Result<Polynomial> {
    let nf = f64::from(n);
    let denom = alpha + nf + 1.0;
    if denom == 0.0 {
        return Err(Error::Domain {
            what: "alternative X1 normalization undefined for alpha + n + 1 = 0",
            value: alpha,
        });
    }
    Ok(p_hat.scaled((alpha + nf) * (beta - alpha) / denom))
}

/// Chebyshev values `T_k, T_k', T_k''` at `s` for `k = 0..=deg`.
fn chebyshev_table(deg: usize, s: f64) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::with_capacity(deg + 1);
    out.push((1.0, 0.0, 0.0));
    if deg >= 1 {
        out.push((s, 1.0, 0.0));
    }
    for k in 1..deg {
        let (t, d, dd) = out[k];
        let (tp, dp, ddp) = out[k - 1];
        out.push((
            2.0 * s * t - tp,
            2.0 * t + 2.0 * s * d - dp,
            4.0 * d + 2.0 * s * dd - ddp,
        ));
    }
    out
}

fn chebyshev_to_monomial(cheb: &[f64]) -> Vec<f64> {
    let deg = cheb.len() - 1;
    let mut out = vec![0.0; deg + 1];
    let mut prev = vec![0.0; deg + 1];
    let mut cur = vec![0.0; deg + 1];
    prev[0] = 1.0;
    out[0] += cheb[0];
    if deg >= 1 {
        cur[1] = 1.0;
        out[1] += cheb[1];
    }
    for &ck in cheb.iter().skip(2) {
        let mut next = vec![0.0; deg + 1];
        for j in 0..deg {
            next[j + 1] += 2.0 * cur[j];
        }
        for (nj, pj) in next.iter_mut().zip(&prev) {
            *nj -= pj;
        }
        for (oj, nj) in out.iter_mut().zip(&next) {
            *oj += ck * nj;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// Location `(β+α)/(β−α)` of the pole of the X1 weight, outside `[−1, 1]`.
pub fn x1_pole(alpha: f64, beta: f64) -> f64 {
    (beta + alpha) / (beta - alpha)
}

/// Coefficients of the extended Scarf operator after dividing out the
/// prefactor `h(s) = (1−s)^((A−B)/2) (1+s)^((A+B)/2) / (2A−1−2Bs)`:
/// `h'/h`, its derivative, and the potential at `s`.
fn gauge_coefficients(a_cap: f64, b_cap: f64, s: f64) -> (f64, f64, f64) {
    let p = 0.5 * (a_cap - b_cap);
    let q = 0.5 * (a_cap + b_cap);
    let c = 2.0 * a_cap - 1.0;
    let den = c - 2.0 * b_cap * s;
    let l1 = -p / (1.0 - s) + q / (1.0 + s) + 2.0 * b_cap / den;
    let l1p = -p / (1.0 - s).powi(2) - q / (1.0 + s).powi(2) + 4.0 * b_cap * b_cap / (den * den);
    let u_ext = (a_cap * a_cap + b_cap * b_cap - a_cap - b_cap * c * s) / (1.0 - s * s)
        + 2.0 * c / den
        - 2.0 * (c * c - 4.0 * b_cap * b_cap) / (den * den);
    (l1, l1p, u_ext)
}

/// Reduced operator `(H − ε)[h f] / h` applied to a function with value and
/// derivatives `(f, f', f'')` at `s`.
fn reduced_operator(a_cap: f64, b_cap: f64, energy: f64, s: f64, f: (f64, f64, f64)) -> f64 {
    let (l1, l1p, u_ext) = gauge_coefficients(a_cap, b_cap, s);
    let (f0, f1, f2) = f;
    let fpp = f2 + 2.0 * l1 * f1 + (l1 * l1 + l1p) * f0;
    let fp = f1 + l1 * f0;
    -(1.0 - s * s) * fpp + s * fp + (u_ext - energy) * f0
}

/// Pointwise residual of the second-order equation satisfied by the n-th
/// X1-Jacobi polynomial, evaluated for the candidate `q` at `z ∈ (−1, 1)`.
pub fn x1_ode_residual(n: u32, alpha: f64, beta: f64, q: &Polynomial, z: f64) -> f64 {
    let a_cap = 0.5 * (alpha + beta + 1.0);
    let b_cap = 0.5 * (beta - alpha);
    let energy = (a_cap + f64::from(n)).powi(2);
    reduced_operator(a_cap, b_cap, energy, z, q.eval_with_derivatives(z))
}

/// Collocation matrix of the extended Scarf operator minus `energy`, acting
/// on Chebyshev coefficients of a degree-`deg` polynomial, each row cleared
/// of poles by `(2A−1−2Bs)³(1−s²)`.
fn collocation_matrix(a_cap: f64, b_cap: f64, energy: f64, deg: usize) -> Vec<Vec<f64>> {
    let rows = 2 * (deg + 1);
    let c = 2.0 * a_cap - 1.0;
    (0..rows)
        .map(|i| {
            let s = (PI * (i as f64 + 0.5) / rows as f64).cos();
            let den = c - 2.0 * b_cap * s;
            let clear = den.powi(3) * (1.0 - s * s);
            chebyshev_table(deg, s)
                .into_iter()
                .map(|t| clear * reduced_operator(a_cap, b_cap, energy, s, t))
                .collect()
        })
        .collect()
}

/// Chebyshev coefficients spanning the nullspace of the collocation system.
pub(crate) fn collocation_nullspace(
    a_cap: f64,
    b_cap: f64,
    energy: f64,
    deg: usize,
) -> Result<Vec<f64>> {
    let original = collocation_matrix(a_cap, b_cap, energy, deg);
    let cols = deg + 1;
    let rows = original.len();

    // Column equilibration.
    let col_scale: Vec<f64> = (0..cols)
        .map(|j| {
            let nrm = original.iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt();
            if nrm > 0.0 {
                1.0 / nrm
            } else {
                1.0
            }
        })
        .collect();
    let scaled: Vec<Vec<f64>> = original
        .iter()
        .map(|r| r.iter().zip(&col_scale).map(|(v, s)| v * s).collect())
        .collect();
    let norm = scaled
        .iter()
        .flat_map(|r| r.iter())
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt();
    if !norm.is_finite() {
        return Err(Error::DegenerateConstruction { nullity: cols });
    }

    // Gaussian elimination with full pivoting.
    let mut m = scaled.clone();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    for r in 0..cols.min(rows) {
        let mut best = (r, r, 0.0_f64);
        for (i, row) in m.iter().enumerate().skip(r) {
            for (j, v) in row.iter().enumerate().skip(r) {
                if v.abs() > best.2 {
                    best = (i, j, v.abs());
                }
            }
        }
        if best.2 <= NULLSPACE_THRESHOLD * norm {
            break;
        }
        m.swap(r, best.0);
        for row in m.iter_mut() {
            row.swap(r, best.1);
        }
        perm.swap(r, best.1);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut().take(rows - r - 1) {
            let f = row[r] / pivot_row[r];
            if f != 0.0 {
                for (x, y) in row[r..cols].iter_mut().zip(&pivot_row[r..cols]) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    let nullity = cols - rank;
    if nullity != 1 {
        return Err(Error::DegenerateConstruction { nullity });
    }

    // Back substitution with the free variable set to one.
    let mut y = vec![0.0; cols];
    y[cols - 1] = 1.0;
    for r in (0..rank).rev() {
        let acc: f64 = ((r + 1)..cols).map(|j| m[r][j] * y[j]).sum();
        y[r] = -acc / m[r][r];
    }
    let mut z = vec![0.0; cols];
    for (k, &pk) in perm.iter().enumerate() {
        z[pk] = y[k];
    }

    let z_norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
    let residual = scaled
        .iter()
        .map(|row| row.iter().zip(&z).map(|(a, b)| a * b).sum::<f64>().powi(2))
        .sum::<f64>()
        .sqrt()
        / z_norm;
    if !(residual < NULLSPACE_THRESHOLD * norm) {
        return Err(Error::DegenerateConstruction { nullity: 0 });
    }
    Ok(z.iter().zip(&col_scale).map(|(v, s)| v * s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_legendre;

    fn params(a_cap: f64, b_cap: f64) -> (f64, f64) {
        (a_cap - b_cap - 0.5, a_cap + b_cap - 0.5)
    }

    #[test]
    fn degree_is_n_plus_one() {
        let (al, be) = params(3.5, 1.5);
        for n in 0..=10 {
            assert_eq!(x1_jacobi(n, al, be).unwrap().degree(), n as usize + 1);
        }
    }

    #[test]
    fn lowest_member_closed_form() {
        // (A, B) = (7/2, 3/2): q(z) = 4/3 − z/2, computed symbolically.
        let (al, be) = params(3.5, 1.5);
        let q = x1_jacobi(0, al, be).unwrap();
        let c = q.coeffs();
        assert_eq!(c.len(), 2);
        assert!((c[0] - 4.0 / 3.0).abs() < 1e-12, "{c:?}");
        assert!((c[1] + 0.5).abs() < 1e-12, "{c:?}");
    }

    #[test]
    fn orthogonal_under_pole_weight() {
        let (al, be) = (2.0, 5.0);
        let pole = x1_pole(al, be);
        let rule = gauss_legendre(200).unwrap();
        let polys: Vec<_> = (0..=6).map(|n| x1_jacobi(n, al, be).unwrap()).collect();
        for m in 0..polys.len() {
            for n in (m + 1)..polys.len() {
                let v = rule.integrate_jacobi_weighted(al, be, |z| {
                    polys[m].eval(z) * polys[n].eval(z) / (z - pole).powi(2)
                });
                let scale = rule
                    .integrate_jacobi_weighted(al, be, |z| (polys[m].eval(z) / (z - pole)).powi(2))
                    .sqrt()
                    * rule
                        .integrate_jacobi_weighted(al, be, |z| {
                            (polys[n].eval(z) / (z - pole)).powi(2)
                        })
                        .sqrt();
                assert!((v / scale).abs() < 1e-9, "m={m} n={n}: {}", v / scale);
            }
        }
    }

    #[test]
    fn nonzero_at_exterior_pole() {
        for &(a_cap, b_cap) in &[(3.5, 1.5), (5.0, 2.0), (4.0, 1.5), (6.0, 0.5)] {
            let (al, be) = params(a_cap, b_cap);
            let pole = x1_pole(al, be);
            assert!(pole.abs() > 1.0);
            for n in 0..8 {
                let q = x1_jacobi(n, al, be).unwrap();
                assert!(q.eval(pole).abs() > 1e-8, "A={a_cap} B={b_cap} n={n}");
            }
        }
    }

    #[test]
    fn residual_by_finite_differences() {
        // Independent sanity check of the ODE on a coarse stencil.
        let (a_cap, b_cap) = (3.5, 1.5);
        let (al, be) = params(a_cap, b_cap);
        for n in 0..4u32 {
            let q = x1_jacobi(n, al, be).unwrap();
            let phi = |u: f64| {
                let s = u.sin();
                (1.0 - s).powf(0.5 * (a_cap - b_cap)) * (1.0 + s).powf(0.5 * (a_cap + b_cap))
                    * q.eval(s)
                    / (2.0 * a_cap - 1.0 - 2.0 * b_cap * s)
            };
            let eps = (a_cap + f64::from(n)).powi(2);
            let h = 1e-3;
            for k in 1..10 {
                let u = -1.2 + 0.24 * f64::from(k);
                let s = u.sin();
                let c = 2.0 * a_cap - 1.0;
                let den = c - 2.0 * b_cap * s;
                let pot = ((a_cap * a_cap + b_cap * b_cap - a_cap) - b_cap * c * s) / (1.0 - s * s)
                    + 2.0 * c / den
                    - 2.0 * (c * c - 4.0 * b_cap * b_cap) / (den * den);
                let d2 = (-phi(u + 2.0 * h) + 16.0 * phi(u + h) - 30.0 * phi(u) + 16.0 * phi(u - h)
                    - phi(u - 2.0 * h))
                    / (12.0 * h * h);
                let r = -d2 + (pot - eps) * phi(u);
                assert!(r.abs() < 1e-5 * eps * phi(u).abs().max(1e-3), "n={n} u={u}: {r}");
            }
        }
    }

    #[test]
    fn analytic_residual_vanishes_only_for_the_true_polynomial() {
        let (al, be) = params(5.0, 2.0);
        for n in 0..6 {
            let q = x1_jacobi(n, al, be).unwrap();
            let other = x1_jacobi(n + 1, al, be).unwrap();
            let eps = (5.0 + f64::from(n)).powi(2);
            let scale = eps * q.eval(0.3).abs().max(q.eval(-0.3).abs());
            for &z in &[-0.9, -0.3, 0.0, 0.3, 0.9] {
                assert!(x1_ode_residual(n, al, be, &q, z).abs() < 1e-9 * scale);
            }
            assert!(x1_ode_residual(n, al, be, &other, 0.3).abs() > 1e-3);
        }
    }

    #[test]
    fn wrong_eigenvalue_has_trivial_nullspace() {
        let err = collocation_nullspace(3.5, 1.5, 13.0, 3).unwrap_err();
        assert_eq!(err, Error::DegenerateConstruction { nullity: 0 });
    }

    #[test]
    fn equal_parameters_rejected() {
        assert!(matches!(x1_jacobi(2, 1.0, 1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn alt_normalization() {
        let q = Polynomial::new(vec![1.0, 2.0]);
        let alt = x1_to_alt_normalization(0, 1.0, 3.0, &q).unwrap();
        assert_eq!(alt.coeffs(), &[1.0, 2.0]);
        let z = x1_to_alt_normalization(1, 2.0, 2.0, &q).unwrap();
        assert!(z.is_zero());
        assert!(x1_to_alt_normalization(0, -1.0, 2.0, &q).is_err());
    }

    #[test]
    fn alt_normalization_preserves_roots() {
        let (al, be) = params(5.0, 2.0);
        let q = x1_jacobi(3, al, be).unwrap();
        let alt = x1_to_alt_normalization(3, al, be, &q).unwrap();
        let ratio = alt.leading_coefficient() / q.leading_coefficient();
        for &z in &[-0.8, -0.1, 0.4, 0.95] {
            assert!((alt.eval(z) - ratio * q.eval(z)).abs() < 1e-12 * q.eval(z).abs().max(1.0));
        }
    }
}
