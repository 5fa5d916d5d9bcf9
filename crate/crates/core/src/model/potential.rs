use std::f64::consts::FRAC_PI_2;

use super::x2::{x2_rational_u, x2_rational_x};
use super::{ensure_valid, pct_map, ExtensionKind, PctMap, ScarfParams, WellParams};
use crate::error::{Error, Result};

fn check_interior(p: &WellParams, x: f64) -> Result<()> {
    if x > p.a && x < p.b {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "position must lie strictly between the walls",
            value: x,
        })
    }
}

fn check_angle(u: f64) -> Result<()> {
    if u.abs() < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "angle must lie in (-pi/2, pi/2)",
            value: u,
        })
    }
}

/// `M(x) = ab / ((x−a)(b−x))`.
pub fn mass(p: &WellParams, x: f64) -> Result<f64> {
    check_interior(p, x)?;
    Ok(p.a * p.b / ((x - p.a) * (p.b - x)))
}

/// `(M, M', M'')` at `x`.
pub fn mass_derivatives(p: &WellParams, x: f64) -> Result<(f64, f64, f64)> {
    check_interior(p, x)?;
    let ab = p.a * p.b;
    let g = (x - p.a) * (p.b - x);
    let g1 = p.a + p.b - 2.0 * x;
    let m = ab / g;
    let m1 = -ab * g1 / (g * g);
    let m2 = ab * (2.0 * g1 * g1 / (g * g * g) + 2.0 / (g * g));
    Ok((m, m1, m2))
}

/// Mass-dependent contribution `M''/(4M²) − 7M'²/(16M³)` of the
/// transformation, in closed form `(1 + (b−a)²/(4(x−a)(b−x)))/(4ab)`.
pub fn mass_term(p: &WellParams, x: f64) -> Result<f64> {
    check_interior(p, x)?;
    let wd = p.width();
    Ok((1.0 + wd * wd / (4.0 * (x - p.a) * (p.b - x))) / (4.0 * p.a * p.b))
}

/// Rational correction to the effective potential. Zero for `Base`.
pub fn pdm_rational(p: &WellParams, x: f64, kind: ExtensionKind) -> Result<f64> {
    check_interior(p, x)?;
    ensure_valid(p, kind)?;
    Ok(match kind {
        ExtensionKind::Base => 0.0,
        ExtensionKind::X1 => ((p.a + p.b) * x - 2.0 * p.a * p.b) / (p.a * p.b * x * x),
        _ => {
            let t = kind.x2_type().expect("x2 kind");
            let parts = x2_rational_x(p, t, x);
            if parts.d == 0.0 || !parts.d.is_finite() {
                return Err(Error::SingularExtension { at: x });
            }
            parts.value()
        }
    })
}

/// Effective potential `V_eff(x) = M(x)ω²x²/4`, plus the rational term of
/// the requested extension.
pub fn v_eff(p: &WellParams, x: f64, kind: ExtensionKind) -> Result<f64> {
    let base = 0.25 * mass(p, x)? * p.omega * p.omega * x * x;
    Ok(base + pdm_rational(p, x, kind)?)
}

/// `u(x) = −arcsin((2x−a−b)/(b−a))`, strictly decreasing.
pub fn u_of_x(p: &WellParams, x: f64) -> Result<f64> {
    check_interior(p, x)?;
    Ok(-((2.0 * x - p.a - p.b) / p.width()).asin())
}

/// Inverse of [`u_of_x`]: `x = (a+b)/2 − ((b−a)/2) sin u`.
pub fn x_of_u(p: &WellParams, u: f64) -> Result<f64> {
    check_angle(u)?;
    Ok(0.5 * (p.a + p.b) - 0.5 * p.width() * u.sin())
}

/// Rational term of the Scarf I extension at `s = sin u`. Zero for `Base`.
pub fn scarf_rational(sp: &ScarfParams, s: f64, kind: ExtensionKind) -> Result<f64> {
    let (a, b) = (sp.a, sp.b);
    Ok(match kind {
        ExtensionKind::Base => 0.0,
        ExtensionKind::X1 => {
            let c = 2.0 * a - 1.0;
            let den = c - 2.0 * b * s;
            if den == 0.0 {
                return Err(Error::SingularExtension { at: s });
            }
            2.0 * c / den - 2.0 * (c * c - 4.0 * b * b) / (den * den)
        }
        _ => {
            let parts = x2_rational_u(sp, kind.x2_type().expect("x2 kind"), s);
            if parts.d == 0.0 || !parts.d.is_finite() {
                return Err(Error::SingularExtension { at: s });
            }
            parts.value()
        }
    })
}

/// Scarf I potential `(A²+B²−A) sec²u − B(2A−1) tan u sec u` plus the
/// rational term of `kind`.
pub fn scarf_potential(sp: &ScarfParams, u: f64, kind: ExtensionKind) -> Result<f64> {
    check_angle(u)?;
    let v = sp.violations(kind);
    if !v.is_empty() {
        return Err(Error::Constraint(v));
    }
    // 1 ∓ sin u = 2 sin²(π/4 ∓ u/2), free of cancellation at the walls.
    let minus = 2.0 * (0.5 * FRAC_PI_2 - 0.5 * u).sin().powi(2);
    let plus = 2.0 * (0.5 * FRAC_PI_2 + 0.5 * u).sin().powi(2);
    scarf_from_parts(sp, u.sin(), minus, plus, kind)
}

/// The Scarf potential in partial fractions,
/// `(A−B)(A−B−1)/(2(1−s)) + (A+B)(A+B−1)/(2(1+s))`, given `s` and the two
/// complementary factors `1 ∓ s`.
fn scarf_from_parts(
    sp: &ScarfParams,
    s: f64,
    one_minus_s: f64,
    one_plus_s: f64,
    kind: ExtensionKind,
) -> Result<f64> {
    let (a, b) = (sp.a, sp.b);
    let base = 0.5 * (a - b) * (a - b - 1.0) / one_minus_s + 0.5 * (a + b) * (a + b - 1.0) / one_plus_s;
    Ok(base + scarf_rational(sp, s, kind)?)
}

/// Effective potential assembled through the transformation,
/// `ā² U(u(x)) + M''/(4M²) − 7M'²/(16M³) + c̄`.
pub fn potential_from_pct(p: &WellParams, kind: ExtensionKind, x: f64) -> Result<f64> {
    ensure_valid(p, kind)?;
    potential_from_pct_with(p, &pct_map(p), kind, x)
}

/// [`potential_from_pct`] with caller-supplied transformation constants.
pub fn potential_from_pct_with(
    p: &WellParams,
    map: &PctMap,
    kind: ExtensionKind,
    x: f64,
) -> Result<f64> {
    check_interior(p, x)?;
    let sp = super::scarf_params_unchecked(p);
    let v = sp.violations(kind);
    if !v.is_empty() {
        return Err(Error::Constraint(v));
    }
    // sin u(x) = −z and 1 ∓ sin u taken from the wall distances directly.
    let wd = p.width();
    let s = -(2.0 * x - p.a - p.b) / wd;
    let scarf = scarf_from_parts(&sp, s, 2.0 * (x - p.a) / wd, 2.0 * (p.b - x) / wd, kind)?;
    Ok(map.a_bar * map.a_bar * scarf + mass_term(p, x)? + map.c_bar)
}
