use serde::{Deserialize, Serialize};

/// Relative magnitude below which trailing coefficients are dropped.
const TRIM_THRESHOLD: f64 = 1e-12;

/// Dense real polynomial, coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing coefficients smaller than
    /// `1e-12 · max|cᵢ|`. An empty or all-zero input gives the zero
    /// polynomial, stored as `[0.0]`.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        let max = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            return Self { coeffs: vec![0.0] };
        }
        while let Some(&last) = coeffs.last() {
            if last.abs() > TRIM_THRESHOLD * max {
                break;
            }
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn leading_coefficient(&self) -> f64 {
        *self.coeffs.last().expect("never empty")
    }

    /// Horner evaluation.
    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
    }

    /// Value, first and second derivative by a single Horner sweep.
    pub fn eval_with_derivatives(&self, z: f64) -> (f64, f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        let mut ddp = 0.0;
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * z + 2.0 * dp;
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp, ddp)
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}
