use crate::error::{Error, Result};

/// Natural logarithm of the gamma function for positive arguments.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "log_gamma requires a finite positive argument",
            value: x,
        });
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn known_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-12);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-12);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-12);
        assert!((log_gamma(0.5).unwrap() - PI.sqrt().ln()).abs() < 1e-12);
    }

    #[test]
    fn factorials_up_to_forty() {
        let mut ln_fact = 0.0_f64;
        for n in 1..=40u32 {
            // Γ(n+1) = n!
            ln_fact += f64::from(n).ln();
            let got = log_gamma(f64::from(n) + 1.0).unwrap();
            assert!((got - ln_fact).abs() < 1e-12 * ln_fact.max(1.0), "n = {n}");
        }
    }

    #[test]
    fn large_arguments_relative() {
        // Stirling series with three correction terms is far below 1e-14
        // relative at these magnitudes.
        for &x in &[1e3f64, 1e4, 1e5, 1e6] {
            let stirling = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x)
                - 1.0 / (360.0 * x.powi(3))
                + 1.0 / (1260.0 * x.powi(5));
            let got = log_gamma(x).unwrap();
            assert!(((got - stirling) / stirling).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(log_gamma(0.0), Err(Error::Domain { .. })));
        assert!(matches!(log_gamma(-1.5), Err(Error::Domain { .. })));
        assert!(log_gamma(f64::NAN).is_err());
    }
}
