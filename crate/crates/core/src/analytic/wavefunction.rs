use std::f64::consts::{FRAC_PI_2, LN_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ensure_valid, pct_map, scarf_params, ExtensionKind, ScarfParams, WellParams};
use crate::specfun::{jacobi_p, jacobi_p_deriv, log_gamma, x1_jacobi, JacobiIndex, Polynomial};

/// Function value with first and second derivative at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionEval {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Product `∏ (c₀ + c₁t)^e` with its logarithmic derivatives.
#[derive(Debug, Clone)]
struct LinearFactors(Vec<(f64, f64, f64)>);

impl LinearFactors {
    /// `(value, (ln g)', (ln g)'')`.
    fn eval(&self, t: f64) -> (f64, f64, f64) {
        let mut value = 1.0;
        let mut l1 = 0.0;
        let mut l2 = 0.0;
        for &(c0, c1, e) in &self.0 {
            let base = c0 + c1 * t;
            value *= base.powf(e);
            l1 += e * c1 / base;
            l2 -= e * c1 * c1 / (base * base);
        }
        (value, l1, l2)
    }
}

#[derive(Debug, Clone)]
enum PolyFactor {
    Jacobi(JacobiIndex),
    Exceptional(Polynomial),
}

impl PolyFactor {
    fn eval(&self, t: f64) -> (f64, f64, f64) {
        match self {
            PolyFactor::Jacobi(idx) => (
                jacobi_p(*idx, t),
                jacobi_p_deriv(*idx, t, 1),
                jacobi_p_deriv(*idx, t, 2),
            ),
            PolyFactor::Exceptional(q) => q.eval_with_derivatives(t),
        }
    }

    fn at(&self, t: f64) -> f64 {
        self.eval(t).0
    }

    fn build(kind: ExtensionKind, n: u32, alpha: f64, beta: f64) -> Result<Self> {
        match kind {
            ExtensionKind::Base => Ok(PolyFactor::Jacobi(JacobiIndex::new(n, alpha, beta)?)),
            ExtensionKind::X1 => Ok(PolyFactor::Exceptional(x1_jacobi(n, alpha, beta)?)),
            _ => Err(no_closed_form(kind)),
        }
    }
}

fn no_closed_form(kind: ExtensionKind) -> Error {
    Error::Domain {
        what: match kind {
            ExtensionKind::X2TypeI => "no closed-form wavefunctions for x2-i",
            ExtensionKind::X2TypeII => "no closed-form wavefunctions for x2-ii",
            _ => "no closed-form wavefunctions for x2-iii",
        },
        value: f64::NAN,
    }
}

fn level_index(n: i64) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::Domain {
        what: "closed-form wavefunctions are labelled by n >= 0",
        value: n as f64,
    })
}

/// `𝒩_n` of the Scarf I eigenfunctions, base or X1-extended.
pub fn scarf_normalization(s: &ScarfParams, n: u32, kind: ExtensionKind) -> Result<f64> {
    let (a, b) = (s.a, s.b);
    let nf = f64::from(n);
    let common = (2.0 * a + 2.0 * nf).ln() + log_gamma(nf + 1.0)? + log_gamma(2.0 * a + nf)?;
    let ln_norm = match kind {
        ExtensionKind::Base => {
            0.5 * (common
                - 2.0 * a * LN_2
                - log_gamma(a - b + nf + 0.5)?
                - log_gamma(a + b + nf + 0.5)?)
        }
        ExtensionKind::X1 => {
            b.ln() - (a - 2.0) * LN_2 + 0.5 * common
                - 0.5 * ((a - b + nf + 0.5).ln() + (a + b + nf + 0.5).ln())
                - 0.5 * (log_gamma(a - b + nf - 0.5)? + log_gamma(a + b + nf - 0.5)?)
        }
        other => return Err(no_closed_form(other)),
    };
    Ok(ln_norm.exp())
}

/// Prepared n-th eigenfunction of the (extended) Scarf I potential in `u`.
#[derive(Debug, Clone)]
pub struct ScarfEigenfunction {
    pub params: ScarfParams,
    pub n: u32,
    pub kind: ExtensionKind,
    norm: f64,
    prefactor: LinearFactors,
    poly: PolyFactor,
}

impl ScarfEigenfunction {
    pub fn new(s: &ScarfParams, n: u32, kind: ExtensionKind) -> Result<Self> {
        let v = s.violations(kind);
        if !v.is_empty() {
            return Err(Error::Constraint(v));
        }
        let (alpha, beta) = s.jacobi_parameters();
        let poly = PolyFactor::build(kind, n, alpha, beta)?;
        let mut factors = vec![
            (1.0, -1.0, 0.5 * (s.a - s.b)),
            (1.0, 1.0, 0.5 * (s.a + s.b)),
        ];
        if kind == ExtensionKind::X1 {
            factors.push((2.0 * s.a - 1.0, -2.0 * s.b, -1.0));
        }
        Ok(Self {
            params: *s,
            n,
            kind,
            norm: scarf_normalization(s, n, kind)?,
            prefactor: LinearFactors(factors),
            poly,
        })
    }

    pub fn normalization(&self) -> f64 {
        self.norm
    }

    /// Eigenvalue `(A+n)²`.
    pub fn energy(&self) -> f64 {
        (self.params.a + f64::from(self.n)).powi(2)
    }

    pub fn eval(&self, u: f64) -> Result<WavefunctionEval> {
        if !(u.abs() < FRAC_PI_2) {
            return Err(Error::Domain {
                what: "angle must lie in (-pi/2, pi/2)",
                value: u,
            });
        }
        let (s, c) = u.sin_cos();
        let (g, l1, l1p) = self.prefactor.eval(s);
        let (q, q1, q2) = self.poly.eval(s);
        let scale = self.norm * g;
        let f = scale * q;
        let f1 = scale * (q1 + l1 * q);
        let f2 = scale * (q2 + 2.0 * l1 * q1 + (l1 * l1 + l1p) * q);
        Ok(WavefunctionEval {
            value: f,
            d1: c * f1,
            d2: c * c * f2 - s * f1,
        })
    }

    /// Sign of the polynomial factor at `s = −1`.
    fn sign_at_minus_one(&self) -> f64 {
        self.poly.at(-1.0).signum()
    }
}

/// `φ_n(u)` with analytic derivatives.
pub fn scarf_wavefunction(
    s: &ScarfParams,
    n: u32,
    u: f64,
    kind: ExtensionKind,
) -> Result<WavefunctionEval> {
    ScarfEigenfunction::new(s, n, kind)?.eval(u)
}

/// `N_n` of the x-space eigenfunctions from the expanded closed forms.
pub fn pdm_normalization(p: &WellParams, n: i64, kind: ExtensionKind) -> Result<f64> {
    ensure_valid(p, kind)?;
    let n = level_index(n)?;
    let nf = f64::from(n);
    let k = p.omega_ab() * (p.a + p.b) / p.width();
    let (alpha, beta) = p.jacobi_parameters();
    let common =
        0.5 * ((k + 2.0 * nf + 1.0).ln() + log_gamma(nf + 1.0)? + log_gamma(k + nf + 1.0)?);
    let ln_norm = match kind {
        ExtensionKind::Base => {
            common
                - 0.5
                    * ((k + 1.0) * p.width().ln()
                        + log_gamma(alpha + nf + 1.0)?
                        + log_gamma(beta + nf + 1.0)?)
        }
        ExtensionKind::X1 => {
            common
                - 0.5 * ((k - 1.0) * p.width().ln() + (alpha + nf + 1.0).ln() + (beta + nf + 1.0).ln())
                - 0.5 * (log_gamma(alpha + nf)? + log_gamma(beta + nf)?)
        }
        other => return Err(no_closed_form(other)),
    };
    Ok(ln_norm.exp())
}

/// `N_n` obtained by transferring the u-space constant `𝒩_n` through the
/// transformation.
pub fn pdm_normalization_via_transfer(p: &WellParams, n: i64, kind: ExtensionKind) -> Result<f64> {
    ensure_valid(p, kind)?;
    let n = level_index(n)?;
    let s = scarf_params(p)?;
    let map = pct_map(p);
    let scarf = scarf_normalization(&s, n, kind)?;
    let k = p.omega_ab() * (p.a + p.b) / p.width();
    let ab = p.a * p.b;
    let ratio = 2.0 / p.width();
    match kind {
        ExtensionKind::Base => Ok(map.lambda * scarf * ab.powf(0.25) * ratio.powf(0.5 * (k + 1.0))),
        ExtensionKind::X1 => {
            Ok(map.lambda / p.omega * ab.powf(-0.75) * ratio.powf(0.5 * (k - 1.0)) * scarf)
        }
        other => Err(no_closed_form(other)),
    }
}

/// `|N_transfer − N_closed| / N_closed`.
pub fn normalization_consistency(p: &WellParams, n: i64, kind: ExtensionKind) -> Result<f64> {
    let closed = pdm_normalization(p, n, kind)?;
    let transfer = pdm_normalization_via_transfer(p, n, kind)?;
    Ok((transfer - closed).abs() / closed)
}

/// Prepared n-th eigenfunction of the PDM problem in `x`.
#[derive(Debug, Clone)]
pub struct PdmEigenfunction {
    pub params: WellParams,
    pub n: u32,
    pub kind: ExtensionKind,
    norm: f64,
    prefactor: LinearFactors,
    poly: PolyFactor,
}

impl PdmEigenfunction {
    pub fn new(p: &WellParams, n: i64, kind: ExtensionKind) -> Result<Self> {
        let norm = pdm_normalization(p, n, kind)?;
        let n = level_index(n)?;
        let (alpha, beta) = p.jacobi_parameters();
        let poly = PolyFactor::build(kind, n, alpha, beta)?;
        let mut factors = vec![(-p.a, 1.0, 0.5 * beta), (p.b, -1.0, 0.5 * alpha)];
        if kind == ExtensionKind::X1 {
            factors.push((0.0, 1.0, -1.0));
        }
        Ok(Self {
            params: *p,
            n,
            kind,
            norm,
            prefactor: LinearFactors(factors),
            poly,
        })
    }

    /// Multiplies the normalization constant by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.norm *= factor;
        self
    }

    pub fn normalization(&self) -> f64 {
        self.norm
    }

    pub fn energy(&self) -> f64 {
        super::energy(&self.params, i64::from(self.n))
    }

    pub fn eval(&self, x: f64) -> Result<WavefunctionEval> {
        let p = &self.params;
        if !(x > p.a && x < p.b) {
            return Err(Error::Domain {
                what: "position must lie strictly between the walls",
                value: x,
            });
        }
        let dz = 2.0 / p.width();
        let z = (2.0 * x - p.a - p.b) / p.width();
        let (h, l1, l1p) = self.prefactor.eval(x);
        let (q, q1, q2) = self.poly.eval(z);
        let scale = self.norm * h;
        Ok(WavefunctionEval {
            value: scale * q,
            d1: scale * (l1 * q + dz * q1),
            d2: scale * ((l1 * l1 + l1p) * q + 2.0 * l1 * dz * q1 + dz * dz * q2),
        })
    }
}

/// `ψ_n(x)` with analytic derivatives.
pub fn pdm_wavefunction(
    p: &WellParams,
    n: i64,
    x: f64,
    kind: ExtensionKind,
) -> Result<WavefunctionEval> {
    PdmEigenfunction::new(p, n, kind)?.eval(x)
}

/// Relative sign `σ_n` in `ψ_n(x) = σ_n λ M(x)^{1/4} φ_n(u(x))`.
///
/// Both families fix the sign of their polynomial factor at argument `+1`;
/// since `sin u = −z`, the x-space and u-space conventions differ by the sign
/// of the u-space polynomial at `s = −1`, which is `(−1)ⁿ` for the base well.
pub fn pct_phase(p: &WellParams, n: i64, kind: ExtensionKind) -> Result<f64> {
    ensure_valid(p, kind)?;
    let n = level_index(n)?;
    let s = scarf_params(p)?;
    Ok(ScarfEigenfunction::new(&s, n, kind)?.sign_at_minus_one())
}
