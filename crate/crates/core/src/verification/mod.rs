//! Checks of every closed-form claim against independent numerics, with a
//! serializable report.
//!
//! ```
//! use pdmwell::verification::Verifier;
//! use pdmwell::WellParams;
//!
//! let v = Verifier::default();
//! let check = v.check_pct(&WellParams::reference(), pdmwell::ExtensionKind::X1);
//! assert!(check.passed());
//! ```

mod checks;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::eigensolver::SolverConfig;
use crate::model::{validate, ExtensionKind, WellParams};

/// Multiplicative corruption applied by a [`Fault`].
pub const FAULT_FACTOR: f64 = 1.01;

/// Schema version of [`Report`].
pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One piece of evidence. `status` is always `Pass` iff
/// `|observed − expected| ≤ tolerance`; non-finite values are stored as
/// `f64::MAX` so that the record stays serializable and fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub kind: ExtensionKind,
    pub params: WellParams,
    pub status: Status,
    pub observed: f64,
    pub expected: f64,
    /// Absolute tolerance on `|observed − expected|`.
    pub tolerance: f64,
    pub detail: String,
}

fn finite_or_max(v: f64, what: &str, detail: &mut String) -> f64 {
    if v.is_finite() {
        v
    } else {
        detail.push_str(&format!(" [{what} was {v}]"));
        f64::MAX
    }
}

impl CheckReport {
    pub fn new(
        check_name: impl Into<String>,
        kind: ExtensionKind,
        params: WellParams,
        observed: f64,
        expected: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        let mut detail = detail.into();
        let observed = finite_or_max(observed, "observed", &mut detail);
        let expected = finite_or_max(expected, "expected", &mut detail);
        let mut r = Self {
            check_name: check_name.into(),
            kind,
            params,
            status: Status::Fail,
            observed,
            expected,
            tolerance,
            detail,
        };
        r.status = r.recomputed_status();
        r
    }

    /// A check that could not be carried out.
    pub fn error(
        check_name: impl Into<String>,
        kind: ExtensionKind,
        params: WellParams,
        err: impl fmt::Display,
    ) -> Self {
        Self::new(check_name, kind, params, f64::MAX, 0.0, 0.0, format!("error: {err}"))
    }

    pub fn recomputed_status(&self) -> Status {
        if (self.observed - self.expected).abs() <= self.tolerance {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Aggregate helpers for slices of reports.
pub trait Checks {
    fn passed(&self) -> bool;
    fn failures(&self) -> Vec<&CheckReport>;
}

impl Checks for [CheckReport] {
    fn passed(&self) -> bool {
        self.iter().all(CheckReport::passed)
    }

    fn failures(&self) -> Vec<&CheckReport> {
        self.iter().filter(|c| !c.passed()).collect()
    }
}

/// Deliberate 1% corruption of one target quantity, used to show that the
/// checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Energy shift of the transformation.
    CBar,
    /// Normalization constants of the closed-form states.
    Normalization,
    /// The whole effective potential.
    Potential,
    /// The rational extension term only.
    Rational,
    /// The X1-Jacobi polynomials (a small next-degree term is added).
    Polynomial,
    /// The closed-form level formula.
    Energy,
}

impl Fault {
    pub const ALL: [Fault; 6] = [
        Fault::CBar,
        Fault::Normalization,
        Fault::Potential,
        Fault::Rational,
        Fault::Polynomial,
        Fault::Energy,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Fault::CBar => "c_bar",
            Fault::Normalization => "normalization",
            Fault::Potential => "potential",
            Fault::Rational => "rational",
            Fault::Polynomial => "polynomial",
            Fault::Energy => "energy",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fault::ALL
            .into_iter()
            .find(|f| f.label() == s || f.label().replace('_', "-") == s)
            .ok_or_else(|| {
                let names: Vec<_> = Fault::ALL.iter().map(|f| f.label()).collect();
                format!("unknown fault `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Tolerances of the individual suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative, for the base and X1 numeric spectra.
    pub spectrum: f64,
    /// Relative (absolute below unit energy), for the X2 numeric spectra.
    pub spectrum_x2: f64,
    /// Half-width of the Sturm-count windows, relative to `max(|E|, 1)`.
    pub level_window: f64,
    pub gram: f64,
    pub pct: f64,
    pub residual: f64,
    pub printed: f64,
    /// Relative.
    pub normalization: f64,
    /// Relative.
    pub energy_map: f64,
    /// Relative.
    pub reference_levels: f64,
    pub x1_orthogonality: f64,
    pub x1_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            spectrum: 1e-5,
            spectrum_x2: 1e-4,
            level_window: 1e-3,
            gram: 1e-8,
            pct: 1e-11,
            residual: 1e-8,
            printed: 1e-12,
            normalization: 1e-12,
            energy_map: 1e-14,
            reference_levels: 1e-14,
            x1_orthogonality: 1e-9,
            x1_residual: 1e-8,
        }
    }
}

/// Configuration of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verifier {
    pub solver: SolverConfig,
    pub tolerances: Tolerances,
    /// Highest closed-form level used by the state-based suites.
    pub nmax: u32,
    /// Highest X1-Jacobi index in the polynomial suite.
    pub x1_nmax: u32,
    /// Gauss-Legendre order of the overlap integrals.
    pub quadrature_order: usize,
    pub fault: Option<Fault>,
}

impl Default for Verifier {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            tolerances: Tolerances::default(),
            nmax: 5,
            x1_nmax: 8,
            quadrature_order: 1000,
            fault: None,
        }
    }
}

impl Verifier {
    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }
}

/// A kind left out of the run because its own constraints fail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedKind {
    pub kind: ExtensionKind,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub params: WellParams,
    pub config: Verifier,
    pub checks: Vec<CheckReport>,
    pub skipped: Vec<SkippedKind>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> Vec<&CheckReport> {
        self.checks.failures()
    }
}

/// Runs every suite that applies to `p`.
///
/// If the base admissibility conditions fail, the report holds one failing
/// record per violated inequality and nothing else. Extension kinds whose
/// additional conditions fail are listed in `skipped`.
pub fn full_report(p: &WellParams, options: &Verifier) -> Report {
    let base = validate(p, ExtensionKind::Base);
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    if !base.is_empty() {
        for v in base {
            checks.push(CheckReport::new(
                format!("validation: {}", v.name),
                ExtensionKind::Base,
                *p,
                0.0,
                1.0,
                0.0,
                v.detail,
            ));
        }
    } else {
        let v = options;
        if *p == WellParams::reference() {
            checks.extend(v.check_reference_levels(p));
            checks.extend(v.check_x2_printed_examples());
        }
        checks.extend(v.check_energy_map(p));
        checks.extend(v.check_x1_polynomials(p));
        for kind in ExtensionKind::ALL {
            let violations = validate(p, kind);
            if !violations.is_empty() {
                skipped.push(SkippedKind {
                    kind,
                    violations: violations.into_iter().map(|v| v.name).collect(),
                });
                continue;
            }
            checks.push(v.check_pct(p, kind));
            checks.extend(v.check_spectrum(p, kind));
            if kind.has_closed_form_states() {
                checks.extend(v.check_orthonormality(p, kind));
                checks.extend(v.check_residuals(p, kind));
                checks.extend(v.check_normalization(p, kind));
            }
        }
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    Report {
        version: REPORT_VERSION.to_string(),
        params: *p,
        config: *options,
        summary: Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        },
        checks,
        skipped,
    }
}
