use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree accepted by [`JacobiIndex::new`].
pub const MAX_DEGREE: u32 = 200;

/// Degree and parameters of a classical Jacobi polynomial `P_n^(α,β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiIndex {
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiIndex {
    /// Both parameters must exceed −1 so the weight `(1−z)^α (1+z)^β` is
    /// integrable.
    pub fn new(n: u32, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::Domain {
                what: "Jacobi alpha must exceed -1",
                value: alpha,
            });
        }
        if !(beta > -1.0) {
            return Err(Error::Domain {
                what: "Jacobi beta must exceed -1",
                value: beta,
            });
        }
        if n > MAX_DEGREE {
            return Err(Error::Domain {
                what: "Jacobi degree above supported maximum",
                value: f64::from(n),
            });
        }
        Ok(Self { n, alpha, beta })
    }

    fn shifted(self, k: u32) -> Self {
        let k_f = f64::from(k);
        Self {
            n: self.n - k,
            alpha: self.alpha + k_f,
            beta: self.beta + k_f,
        }
    }
}

/// Evaluates `P_n^(α,β)(z)` with the three-term recurrence.
pub fn jacobi_p(idx: JacobiIndex, z: f64) -> f64 {
    let JacobiIndex { n, alpha, beta } = idx;
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut p_prev = 1.0;
    let mut p = (alpha + 1.0) + 0.5 * (ab + 2.0) * (z - 1.0);
    for k in 2..=n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * z + alpha * alpha - beta * beta);
        let a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let next = (a2 * p - a3 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    p
}

/// First or second derivative of `P_n^(α,β)` at `z`, from the parameter-shift
/// identity `d/dz P_n^(α,β) = (n+α+β+1)/2 · P_{n−1}^(α+1,β+1)`.
pub fn jacobi_p_deriv(idx: JacobiIndex, z: f64, order: u32) -> f64 {
    if order == 0 {
        return jacobi_p(idx, z);
    }
    if idx.n < order {
        return 0.0;
    }
    let ab = idx.alpha + idx.beta;
    let n = f64::from(idx.n);
    let factor: f64 = (1..=order)
        .map(|j| 0.5 * (n + ab + f64::from(j)))
        .product();
    factor * jacobi_p(idx.shifted(order), z)
}

/// Coefficient of `z^n` in `P_n^(α,β)(z)`, i.e.
/// `Γ(2n+α+β+1) / (2^n n! Γ(n+α+β+1))`.
pub fn jacobi_leading_coefficient(n: u32, alpha: f64, beta: f64) -> f64 {
    let nf = f64::from(n);
    (1..=n)
        .map(|j| (nf + alpha + beta + f64::from(j)) / (2.0 * f64::from(j)))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_legendre;

    fn idx(n: u32, a: f64, b: f64) -> JacobiIndex {
        JacobiIndex::new(n, a, b).unwrap()
    }

    #[test]
    fn low_degrees() {
        assert_eq!(jacobi_p(idx(0, 0.3, 7.0), -0.4), 1.0);
        // P_1^(α,β)(1) = α+1
        assert!((jacobi_p(idx(1, 2.0, 1.0), 1.0) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn value_at_one_is_pochhammer_ratio() {
        // P_n(1) = (α+1)_n / n!
        let (a, b) = (1.5, 4.5);
        for n in 0..12u32 {
            let expected: f64 = (1..=n)
                .map(|j| (a + f64::from(j)) / f64::from(j))
                .product();
            let got = jacobi_p(idx(n, a, b), 1.0);
            assert!(((got - expected) / expected).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn legendre_special_case() {
        // P_3^(0,0)(z) = (5z³ − 3z)/2
        for &z in &[-0.9, -0.2, 0.0, 0.35, 1.0] {
            let exact = 0.5 * (5.0 * z * z * z - 3.0 * z);
            assert!((jacobi_p(idx(3, 0.0, 0.0), z) - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn orthogonality_p2_p3() {
        // Substitution z = sin t turns the endpoint powers into smooth ones.
        let rule = gauss_legendre(200).unwrap();
        let (a, b) = (1.5, 0.5);
        let v = rule.integrate_jacobi_weighted(a, b, |z| {
            jacobi_p(idx(2, a, b), z) * jacobi_p(idx(3, a, b), z)
        });
        assert!(v.abs() < 1e-10, "{v}");
    }

    #[test]
    fn orthogonality_table() {
        let rule = gauss_legendre(200).unwrap();
        for &(a, b) in &[(0.5, 1.5), (2.0, 5.0), (3.0, 3.0)] {
            for m in 0..=10u32 {
                for n in (m + 1)..=10 {
                    let v = rule.integrate_jacobi_weighted(a, b, |z| {
                        jacobi_p(idx(m, a, b), z) * jacobi_p(idx(n, a, b), z)
                    });
                    assert!(v.abs() < 1e-10, "(α,β)=({a},{b}) m={m} n={n}: {v}");
                }
            }
        }
    }

    #[test]
    fn derivative_low_degrees() {
        assert_eq!(jacobi_p_deriv(idx(0, 1.0, 1.0), 0.2, 1), 0.0);
        assert!((jacobi_p_deriv(idx(1, 2.0, 1.0), -0.7, 1) - 2.5).abs() < 1e-15);
        assert_eq!(jacobi_p_deriv(idx(1, 2.0, 1.0), -0.7, 2), 0.0);
    }

    fn central(f: impl Fn(f64) -> f64, z: f64, h: f64, order: u32) -> f64 {
        match order {
            1 => (f(z + h) - f(z - h)) / (2.0 * h),
            _ => (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h),
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let i = idx(5, 3.0, 2.0);
        let fd = central(|t| jacobi_p(i, t), 0.3, 1e-5, 1);
        let an = jacobi_p_deriv(i, 0.3, 1);
        assert!(((fd - an) / an).abs() < 1e-6);
    }

    #[test]
    fn leading_coefficient_matches_monomial_limit() {
        let (a, b) = (1.5, 4.5);
        for n in 1..8u32 {
            // lc = P^(n)(z) / n!
            let nth = jacobi_p_deriv(idx(n, a, b), 0.1, n);
            let fact: f64 = (1..=n).map(f64::from).product();
            let lc = jacobi_leading_coefficient(n, a, b);
            assert!(((nth / fact - lc) / lc).abs() < 1e-12);
        }
        assert!((jacobi_leading_coefficient(2, 1.5, 4.5) - 11.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_integrable_parameters() {
        assert!(JacobiIndex::new(2, -1.0, 0.0).is_err());
        assert!(JacobiIndex::new(2, 0.0, -1.5).is_err());
        assert!(JacobiIndex::new(201, 0.0, 0.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn derivatives_match_finite_differences(
                n in 0u32..=20,
                a in -0.5f64..6.0,
                b in -0.5f64..6.0,
                z in -0.9f64..0.9,
            ) {
                let i = idx(n, a, b);
                let h = 1e-4;
                for order in 1..=2u32 {
                    let an = jacobi_p_deriv(i, z, order);
                    let f = |t| jacobi_p_deriv(i, t, order - 1);
                    let fd = (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h))
                        / (12.0 * h);
                    let scale = an.abs().max(jacobi_p_deriv(i, z, order - 1).abs()).max(1.0);
                    prop_assert!((an - fd).abs() <= 1e-6 * scale,
                        "order {order}: analytic {an} vs fd {fd}");
                }
            }
        }
    }
}
