//! Closed-form potentials, the mass profile, the point canonical
//! transformation and parameter admissibility.

mod potential;
mod x2;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use potential::{
    mass, mass_derivatives, mass_term, pdm_rational, potential_from_pct, potential_from_pct_with,
    scarf_potential, scarf_rational, u_of_x, v_eff, x_of_u,
};
pub use x2::{x2_rational_u, x2_rational_x, RationalParts, X2Type};

/// Parameters of the oscillator-shaped well: frequency `omega` and wall
/// positions `0 < a < b`, in units `ħ = 2m₀ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellParams {
    pub omega: f64,
    pub a: f64,
    pub b: f64,
}

impl WellParams {
    /// Checked constructor for the basic ordering `ω > 0`, `0 < a < b`.
    pub fn new(omega: f64, a: f64, b: f64) -> Result<Self> {
        let p = Self { omega, a, b };
        let v = p.basic_violations();
        if v.is_empty() {
            Ok(p)
        } else {
            Err(Error::Constraint(v))
        }
    }

    /// ω = a = 1, b = 3.
    pub const fn reference() -> Self {
        Self {
            omega: 1.0,
            a: 1.0,
            b: 3.0,
        }
    }

    /// `ωab`, the combination all admissibility conditions are phrased in.
    pub fn omega_ab(&self) -> f64 {
        self.omega * self.a * self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Jacobi parameters of the x-space wavefunctions:
    /// `(ωab²/(b−a), ωa²b/(b−a))`.
    pub fn jacobi_parameters(&self) -> (f64, f64) {
        let w = self.omega_ab() / self.width();
        (w * self.b, w * self.a)
    }

    /// Bottom of the unextended well, `2ab/(a+b)`.
    pub fn x_min(&self) -> f64 {
        2.0 * self.a * self.b / (self.a + self.b)
    }

    fn basic_violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        if !(self.omega > 0.0) {
            v.push(Violation::new("omega > 0", format!("omega = {}", self.omega)));
        }
        if !(self.a > 0.0) {
            v.push(Violation::new("a > 0", format!("a = {}", self.a)));
        }
        if !(self.b > self.a) {
            v.push(Violation::new("b > a", format!("a = {}, b = {}", self.a, self.b)));
        }
        v
    }
}

impl Default for WellParams {
    fn default() -> Self {
        Self::reference()
    }
}

impl fmt::Display for WellParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omega={}, a={}, b={}", self.omega, self.a, self.b)
    }
}

/// Scarf I parameters `A`, `B` of
/// `U(u) = (A²+B²−A) sec²u − B(2A−1) tan u sec u` on `(−π/2, π/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScarfParams {
    pub a: f64,
    pub b: f64,
}

impl ScarfParams {
    pub const fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    /// Jacobi parameters `(A−B−1/2, A+B−1/2)` of the u-space wavefunctions.
    pub fn jacobi_parameters(&self) -> (f64, f64) {
        (self.a - self.b - 0.5, self.a + self.b - 0.5)
    }

    /// Admissibility of `(A, B)` for the given family.
    pub fn violations(&self, kind: ExtensionKind) -> Vec<Violation> {
        let (a, b) = (self.a, self.b);
        let detail = || format!("A = {a}, B = {b}");
        let mut v = Vec::new();
        let lower = if kind == ExtensionKind::X2TypeI { 1.0 } else { 0.0 };
        if !(b > lower) {
            let name = if lower == 1.0 { "B > 1" } else { "B > 0" };
            v.push(Violation::new(name, detail()));
        }
        match kind {
            ExtensionKind::X2TypeII | ExtensionKind::X2TypeIII => {
                if !(b < a - 1.5) {
                    v.push(Violation::new("B < A − 3/2", detail()));
                }
            }
            _ => {
                if !(b < a - 1.0) {
                    v.push(Violation::new("B < A − 1", detail()));
                }
            }
        }
        v
    }
}

/// The potential family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionKind {
    Base,
    X1,
    #[serde(rename = "x2-i")]
    X2TypeI,
    #[serde(rename = "x2-ii")]
    X2TypeII,
    #[serde(rename = "x2-iii")]
    X2TypeIII,
}

impl ExtensionKind {
    pub const ALL: [ExtensionKind; 5] = [
        ExtensionKind::Base,
        ExtensionKind::X1,
        ExtensionKind::X2TypeI,
        ExtensionKind::X2TypeII,
        ExtensionKind::X2TypeIII,
    ];

    /// Short lowercase label, as used on the command line.
    pub fn label(self) -> &'static str {
        match self {
            ExtensionKind::Base => "base",
            ExtensionKind::X1 => "x1",
            ExtensionKind::X2TypeI => "x2-i",
            ExtensionKind::X2TypeII => "x2-ii",
            ExtensionKind::X2TypeIII => "x2-iii",
        }
    }

    pub fn x2_type(self) -> Option<X2Type> {
        match self {
            ExtensionKind::X2TypeI => Some(X2Type::I),
            ExtensionKind::X2TypeII => Some(X2Type::II),
            ExtensionKind::X2TypeIII => Some(X2Type::III),
            _ => None,
        }
    }

    /// Whether closed-form wavefunctions are available.
    pub fn has_closed_form_states(self) -> bool {
        matches!(self, ExtensionKind::Base | ExtensionKind::X1)
    }

    /// The first `count` level labels `n` of the family's spectrum: `0, 1, 2, …`
    /// everywhere except type III, whose set is `−2, 1, 2, …`.
    pub fn index_set(self, count: usize) -> Vec<i64> {
        match self {
            ExtensionKind::X2TypeIII => std::iter::once(-2)
                .chain(1..)
                .take(count)
                .collect(),
            _ => (0..count as i64).collect(),
        }
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ExtensionKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ExtensionKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| format!("unknown kind `{s}` (expected base, x1, x2-i, x2-ii, x2-iii)"))
    }
}

/// One failed admissibility inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// The inequality that must hold, e.g. `2·omega·a²·b > b−a`.
    pub name: String,
    /// The offending values.
    pub detail: String,
}

impl Violation {
    pub fn new(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.detail)
    }
}

/// Constants of the point canonical transformation: `u = ā v(x) + b̄`,
/// energy shift `c̄`, normalization transfer factor `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PctMap {
    pub a_bar: f64,
    pub b_bar: f64,
    pub c_bar: f64,
    pub lambda: f64,
}

/// `ā = −1/√(ab)`, `b̄ = 0`, `c̄ = −ω²ab/4 − 1/(4ab)`, `λ = (ab)^{−1/4}`.
pub fn pct_map(p: &WellParams) -> PctMap {
    let ab = p.a * p.b;
    PctMap {
        a_bar: -1.0 / ab.sqrt(),
        b_bar: 0.0,
        c_bar: -0.25 * p.omega * p.omega * ab - 0.25 / ab,
        lambda: ab.powf(-0.25),
    }
}

/// Scarf I parameters `A = (ωab(a+b)/(b−a) + 1)/2`, `B = ωab/2` obtained by
/// matching the wavefunctions under the transformation.
pub fn scarf_params(p: &WellParams) -> Result<ScarfParams> {
    let v = validate(p, ExtensionKind::Base);
    if !v.is_empty() {
        return Err(Error::Constraint(v));
    }
    Ok(scarf_params_unchecked(p))
}

pub(crate) fn scarf_params_unchecked(p: &WellParams) -> ScarfParams {
    let w = p.omega_ab();
    ScarfParams {
        a: 0.5 * (w * (p.a + p.b) / p.width() + 1.0),
        b: 0.5 * w,
    }
}

/// Every admissibility inequality that fails for `kind`; empty when valid.
pub fn validate(p: &WellParams, kind: ExtensionKind) -> Vec<Violation> {
    let mut v = p.basic_violations();
    if !v.is_empty() {
        return v;
    }
    let (omega, a, b) = (p.omega, p.a, p.b);
    let w = p.omega_ab();
    let width = p.width();
    let base = 2.0 * omega * a * a * b;
    if !(base > width) {
        v.push(Violation::new(
            "2·omega·a²·b > b−a",
            format!("2·omega·a²·b = {base}, b−a = {width}"),
        ));
    }
    match kind {
        ExtensionKind::Base | ExtensionKind::X1 => {}
        ExtensionKind::X2TypeI => {
            if !(w > 2.0) {
                v.push(Violation::new("omega·a·b > 2", format!("omega·a·b = {w}")));
            }
        }
        ExtensionKind::X2TypeII | ExtensionKind::X2TypeIII => {
            let bound = width / a;
            if !(w > bound) {
                v.push(Violation::new(
                    "omega·a·b > (b−a)/a",
                    format!("omega·a·b = {w}, (b−a)/a = {bound}"),
                ));
            }
        }
    }
    v
}

pub(crate) fn ensure_valid(p: &WellParams, kind: ExtensionKind) -> Result<()> {
    let v = validate(p, kind);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Constraint(v))
    }
}
