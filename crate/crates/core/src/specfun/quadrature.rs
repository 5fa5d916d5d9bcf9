use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rule size accepted by [`gauss_legendre`].
pub const MAX_NODES: usize = 10_000;

/// Nodes and weights of an interpolatory rule on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫₋₁¹ f(z) dz`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| w * f(z))
            .sum()
    }

    /// `∫ₗᵒʰⁱ f(x) dx` by the affine map of the rule.
    pub fn integrate_on(&self, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self.integrate(|z| f(mid + half * z))
    }

    /// `∫₋₁¹ (1−z)^α (1+z)^β f(z) dz` through `z = sin t`.
    ///
    /// After the substitution the weight behaves like `(π/2 ∓ t)^{2α+1}` at
    /// the ends, which Gauss-Legendre resolves far better than the algebraic
    /// endpoint singularities in `z`.
    pub fn integrate_jacobi_weighted(
        &self,
        alpha: f64,
        beta: f64,
        f: impl Fn(f64) -> f64,
    ) -> f64 {
        self.integrate_on(-FRAC_PI_2, FRAC_PI_2, |t| {
            let (s, c) = t.sin_cos();
            // 1 ∓ sin t written without cancellation near the ends.
            let one_minus = 2.0 * (0.5 * (FRAC_PI_2 - t)).sin().powi(2);
            let one_plus = 2.0 * (0.5 * (FRAC_PI_2 + t)).sin().powi(2);
            one_minus.powf(alpha) * one_plus.powf(beta) * f(s) * c
        })
    }
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// `n`-point Gauss-Legendre rule, nodes found by Newton iteration on the
/// Legendre recurrence. Nodes are returned in ascending order.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_NODES {
        return Err(Error::Domain {
            what: "Gauss-Legendre rule size must lie in 1..=10000",
            value: n as f64,
        });
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess for the i-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_gamma;

    #[test]
    fn one_point_rule() {
        let r = gauss_legendre(1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert!((r.weights[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_rule_on_square() {
        let r = gauss_legendre(2).unwrap();
        assert!((r.integrate(|z| z * z) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_and_symmetry() {
        for &n in &[3usize, 10, 64, 200, 1000, 4001] {
            let r = gauss_legendre(n).unwrap();
            let total: f64 = r.weights.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n = {n}: {total}");
            for i in 0..n {
                assert!((r.nodes[i] + r.nodes[n - 1 - i]).abs() < 1e-15);
                assert!(r.weights[i] > 0.0);
                assert!(r.nodes[i].abs() < 1.0);
            }
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn beta_integral() {
        // ∫ (1−z)³(1+z)⁵ dz = 2^{9} B(4, 6)
        let r = gauss_legendre(64).unwrap();
        let v = r.integrate(|z| (1.0 - z).powi(3) * (1.0 + z).powi(5));
        let ln_beta = log_gamma(4.0).unwrap() + log_gamma(6.0).unwrap() - log_gamma(10.0).unwrap();
        let exact = 2f64.powi(9) * ln_beta.exp();
        assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn jacobi_weighted_beta_integral() {
        // Non-integer exponents: 2^{α+β+1} B(α+1, β+1).
        let r = gauss_legendre(200).unwrap();
        let (a, b) = (1.5, 4.5);
        let v = r.integrate_jacobi_weighted(a, b, |_| 1.0);
        let ln_beta =
            log_gamma(a + 1.0).unwrap() + log_gamma(b + 1.0).unwrap() - log_gamma(a + b + 2.0).unwrap();
        let exact = 2f64.powf(a + b + 1.0) * ln_beta.exp();
        assert!(((v - exact) / exact).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(MAX_NODES + 1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn exact_for_degree_2n_minus_1(
                n in 1usize..40,
                coeffs in proptest::collection::vec(-1.0f64..1.0, 80),
            ) {
                let rule = gauss_legendre(n).unwrap();
                let deg = 2 * n - 1;
                let c = &coeffs[..=deg];
                let got = rule.integrate(|z| c.iter().rev().fold(0.0, |acc, &ck| acc * z + ck));
                // ∫ z^k = 2/(k+1) for even k.
                let exact: f64 = c.iter().enumerate()
                    .filter(|(k, _)| k % 2 == 0)
                    .map(|(k, &ck)| 2.0 * ck / (k as f64 + 1.0))
                    .sum();
                prop_assert!((got - exact).abs() < 1e-12, "{got} vs {exact}");
            }
        }
    }
}
