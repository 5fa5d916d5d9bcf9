use std::f64::consts::FRAC_PI_2;

use super::{CheckReport, Fault, Verifier, FAULT_FACTOR};
use crate::analytic::{self, pdm_normalization_via_transfer, PdmEigenfunction};
use crate::eigensolver::{residual_of, solve_with_potential, LevelCounter, SolverConfig};
use crate::error::Result;
use crate::model::{
    pct_map, pdm_rational, potential_from_pct_with, scarf_params, v_eff, x_of_u, ExtensionKind,
    PctMap, WellParams,
};
use crate::specfun::{gauss_legendre, x1_jacobi, x1_ode_residual, x1_pole, Polynomial};

const PCT_POINTS: usize = 1000;
const RESIDUAL_POINTS: usize = 50;
const ENERGY_MAP_LEVELS: i64 = 20;
const X1_RULE_ORDER: usize = 200;
/// `(A, B)` pairs of the X1-Jacobi suite.
const X1_CASES: [(f64, f64); 2] = [(3.5, 1.5), (5.0, 2.0)];

fn interior_points(p: &WellParams, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| p.a + p.width() * i as f64 / (count + 1) as f64)
        .collect()
}

/// `ω = a = 1`, `b = 3` potentials of the three X2 types, transcribed term by
/// term.
fn printed_x2(kind: ExtensionKind, x: f64) -> f64 {
    let base = 3.0 * x * x / (4.0 * (x - 1.0) * (3.0 - x));
    match kind {
        ExtensionKind::X2TypeI => {
            let d = 2.0 * x * x + 16.0 * x - 3.0;
            base + 16.0 * (3.0 * x - 23.0) / (3.0 * d) + 280.0 * (8.0 * x - 3.0) / (d * d)
        }
        ExtensionKind::X2TypeII => {
            let d = 20.0 * x * x - 32.0 * x + 15.0;
            base + 8.0 * (60.0 * x - 59.0) / (15.0 * d) - 88.0 * (16.0 * x - 15.0) / (5.0 * d * d)
        }
        ExtensionKind::X2TypeIII => {
            let d = 20.0 * x * x - 50.0 * x + 33.0;
            base + 2.0 * (30.0 * x - 13.0) / (3.0 * d) - 14.0 * (10.0 * x - 9.0) / (d * d)
        }
        _ => f64::NAN,
    }
}

impl Verifier {
    fn factor(&self, fault: Fault) -> f64 {
        if self.fault == Some(fault) {
            FAULT_FACTOR
        } else {
            1.0
        }
    }

    /// Closed-form level, subject to [`Fault::Energy`].
    fn energy(&self, p: &WellParams, n: i64) -> f64 {
        analytic::energy(p, n) * self.factor(Fault::Energy)
    }

    /// Effective potential, subject to [`Fault::Potential`] and
    /// [`Fault::Rational`].
    fn potential(&self, p: &WellParams, kind: ExtensionKind, x: f64) -> Result<f64> {
        let v = v_eff(p, x, kind)?;
        Ok(match self.fault {
            Some(Fault::Potential) => v * FAULT_FACTOR,
            Some(Fault::Rational) => v + (FAULT_FACTOR - 1.0) * pdm_rational(p, x, kind)?,
            _ => v,
        })
    }

    /// Transformation constants, subject to [`Fault::CBar`].
    fn pct(&self, p: &WellParams) -> PctMap {
        let mut m = pct_map(p);
        m.c_bar *= self.factor(Fault::CBar);
        m
    }

    /// Closed-form state, subject to [`Fault::Normalization`].
    fn state(&self, p: &WellParams, n: i64, kind: ExtensionKind) -> Result<PdmEigenfunction> {
        Ok(PdmEigenfunction::new(p, n, kind)?.scaled(self.factor(Fault::Normalization)))
    }

    /// X1-Jacobi polynomial, subject to [`Fault::Polynomial`].
    fn x1(&self, n: u32, alpha: f64, beta: f64) -> Result<Polynomial> {
        let q = x1_jacobi(n, alpha, beta)?;
        if self.fault != Some(Fault::Polynomial) {
            return Ok(q);
        }
        let mut c = q.coeffs().to_vec();
        c.push((FAULT_FACTOR - 1.0) * q.leading_coefficient());
        Ok(Polynomial::new(c))
    }

    /// `E_0, E_1, E_2` of the reference well against `13/4, 71/12, 37/4`.
    pub fn check_reference_levels(&self, p: &WellParams) -> Vec<CheckReport> {
        let tol = self.tolerances.reference_levels;
        [13.0 / 4.0, 71.0 / 12.0, 37.0 / 4.0]
            .into_iter()
            .enumerate()
            .map(|(n, exact)| {
                CheckReport::new(
                    format!("reference level E_{n}"),
                    ExtensionKind::Base,
                    *p,
                    self.energy(p, n as i64),
                    exact,
                    tol * exact,
                    format!("closed-form level vs exact rational, relative tolerance {tol:e}"),
                )
            })
            .collect()
    }

    /// Closed-form `E_n` against the mapped Scarf level `ā²(A+n)² + c̄`, worst
    /// relative deviation for `n ≤ 20`.
    pub fn check_energy_map(&self, p: &WellParams) -> Vec<CheckReport> {
        let tol = self.tolerances.energy_map;
        let name = "energy map";
        let s = match scarf_params(p) {
            Ok(s) => s,
            Err(e) => return vec![CheckReport::error(name, ExtensionKind::Base, *p, e)],
        };
        let m = self.pct(p);
        let worst = (0..=ENERGY_MAP_LEVELS)
            .map(|n| {
                let e = self.energy(p, n);
                let mapped = m.a_bar * m.a_bar * analytic::scarf_energy(&s, n) + m.c_bar;
                (e - mapped).abs() / e.abs()
            })
            .fold(0.0, f64::max);
        vec![CheckReport::new(
            name,
            ExtensionKind::Base,
            *p,
            worst,
            0.0,
            tol,
            format!("max relative deviation over n = 0..{ENERGY_MAP_LEVELS}"),
        )]
    }

    /// Worst pointwise gap between the transformed Scarf potential and the
    /// effective potential at 1000 interior points.
    pub fn check_pct(&self, p: &WellParams, kind: ExtensionKind) -> CheckReport {
        self.check_pct_with_map(p, kind, &self.pct(p))
    }

    /// [`Verifier::check_pct`] with explicit transformation constants.
    pub fn check_pct_with_map(&self, p: &WellParams, kind: ExtensionKind, m: &PctMap) -> CheckReport {
        let name = "pct potential identity";
        let mut worst = 0.0_f64;
        for x in interior_points(p, PCT_POINTS) {
            let pair = potential_from_pct_with(p, m, kind, x)
                .and_then(|a| self.potential(p, kind, x).map(|b| (a, b)));
            match pair {
                Ok((a, b)) => worst = worst.max((a - b).abs()),
                Err(e) => return CheckReport::error(name, kind, *p, e),
            }
        }
        CheckReport::new(
            name,
            kind,
            *p,
            worst,
            0.0,
            self.tolerances.pct,
            format!("max |V_pct − V_eff| over {PCT_POINTS} interior points"),
        )
    }

    fn spectrum_tolerance(&self, kind: ExtensionKind) -> f64 {
        match kind {
            ExtensionKind::Base | ExtensionKind::X1 => self.tolerances.spectrum,
            _ => self.tolerances.spectrum_x2,
        }
    }

    /// Numeric levels against the closed form, a Sturm-count check that
    /// there is exactly one level near each closed-form value and none in
    /// between, and for type III the distance from `E(0)` to the nearest
    /// numeric level.
    pub fn check_spectrum(&self, p: &WellParams, kind: ExtensionKind) -> Vec<CheckReport> {
        let name = "spectrum";
        if let Err(e) = crate::model::ensure_valid(p, kind) {
            return vec![CheckReport::error(name, kind, *p, e)];
        }
        let levels = self.solver.levels;
        let labels = kind.index_set(levels);
        let pot = |x: f64| self.potential(p, kind, x).unwrap_or(f64::NAN);
        let result = match solve_with_potential(p, &pot, &self.solver) {
            Ok(r) => r,
            Err(e) => return vec![CheckReport::error(name, kind, *p, e)],
        };
        let rel = self.spectrum_tolerance(kind);
        let errors = result.estimated_error.clone().unwrap_or_default();
        let mut out: Vec<CheckReport> = labels
            .iter()
            .zip(&result.energies)
            .enumerate()
            .map(|(k, (&n, &numeric))| {
                let exact = self.energy(p, n);
                let est = errors.get(k).map_or(String::new(), |e| format!(", estimated error {e:.3e}"));
                CheckReport::new(
                    format!("spectrum level n={n}"),
                    kind,
                    *p,
                    numeric,
                    exact,
                    rel * exact.abs().max(1.0),
                    format!("numeric level {k} vs closed form{est}"),
                )
            })
            .collect();

        // Exactly one level inside each closed-form window, none between.
        let raw = SolverConfig {
            richardson: false,
            ..self.solver
        };
        let win = self.tolerances.level_window;
        let counter = match LevelCounter::new(p, &pot, &raw) {
            Ok(c) => c,
            Err(e) => {
                out.push(CheckReport::error("level structure", kind, *p, e));
                return out;
            }
        };
        let mut bad = Vec::new();
        for (k, &n) in labels.iter().enumerate() {
            let e = self.energy(p, n);
            let d = win * e.abs().max(1.0);
            let (lo, hi) = (counter.below(e - d), counter.below(e + d));
            if lo != k || hi != k + 1 {
                bad.push(format!("n={n}: {lo} below, {hi} through"));
            }
        }
        out.push(CheckReport::new(
            "level structure",
            kind,
            *p,
            bad.len() as f64,
            0.0,
            0.0,
            if bad.is_empty() {
                format!(
                    "one level in each window E_n ± {win:e}·max(|E_n|, 1) for n in {labels:?}, none between"
                )
            } else {
                format!("misplaced levels: {}", bad.join("; "))
            },
        ));

        if kind == ExtensionKind::X2TypeIII {
            let e0 = self.energy(p, 0);
            let nearest = |values: &mut dyn Iterator<Item = f64>| {
                values.map(|v| (v - e0).abs()).fold(f64::INFINITY, f64::min)
            };
            let observed = nearest(&mut result.energies.iter().copied());
            let expected = nearest(&mut labels.iter().map(|&n| self.energy(p, n)));
            let present = observed < 0.5 * expected;
            out.push(CheckReport::new(
                "level near E(0)",
                kind,
                *p,
                observed,
                expected,
                rel * expected.max(1.0),
                format!(
                    "distance from E(0) = {e0} to the nearest numeric level; a level at E(0) is {}",
                    if present { "present" } else { "absent, as in the index set" }
                ),
            ));
        }
        out
    }

    /// Rows of the Gram matrix of `ψ_0..ψ_nmax`: worst entrywise deviation
    /// from the identity, per row.
    pub fn check_orthonormality(&self, p: &WellParams, kind: ExtensionKind) -> Vec<CheckReport> {
        let nmax = self.nmax as i64;
        let name = "orthonormality row";
        let states: Result<Vec<_>> = (0..=nmax).map(|n| self.state(p, n, kind)).collect();
        let states = match states {
            Ok(s) => s,
            Err(e) => return vec![CheckReport::error(name, kind, *p, e)],
        };
        let rule = match gauss_legendre(self.quadrature_order) {
            Ok(r) => r,
            Err(e) => return vec![CheckReport::error(name, kind, *p, e)],
        };
        // x = x(u) removes the fractional-power wall behaviour.
        let jac = 0.5 * p.width();
        let mut samples = Vec::with_capacity(rule.len());
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let u = FRAC_PI_2 * t;
            let x = match x_of_u(p, u) {
                Ok(x) if x > p.a && x < p.b => x,
                _ => continue,
            };
            let vals: Result<Vec<f64>> = states.iter().map(|s| s.eval(x).map(|e| e.value)).collect();
            match vals {
                Ok(v) => samples.push((FRAC_PI_2 * w * jac * u.cos(), v)),
                Err(e) => return vec![CheckReport::error(name, kind, *p, e)],
            }
        }
        let count = states.len();
        (0..count)
            .map(|i| {
                let mut worst = 0.0_f64;
                let mut at = 0;
                for j in 0..count {
                    let g: f64 = samples.iter().map(|(w, v)| w * v[i] * v[j]).sum();
                    let dev = (g - if i == j { 1.0 } else { 0.0 }).abs();
                    if dev > worst {
                        worst = dev;
                        at = j;
                    }
                }
                CheckReport::new(
                    format!("{name} n={i}"),
                    kind,
                    *p,
                    worst,
                    0.0,
                    self.tolerances.gram,
                    format!(
                        "max_j |<ψ_{i}|ψ_j> − δ_ij| over j = 0..{nmax}, attained at j={at}; {}-point rule",
                        self.quadrature_order
                    ),
                )
            })
            .collect()
    }

    /// Scaled residual of the position-space equation for each closed-form
    /// state at 50 interior points.
    pub fn check_residuals(&self, p: &WellParams, kind: ExtensionKind) -> Vec<CheckReport> {
        let pts = interior_points(p, RESIDUAL_POINTS);
        let pot = |x: f64| self.potential(p, kind, x);
        (0..=i64::from(self.nmax))
            .map(|n| {
                let name = format!("ode residual n={n}");
                match self.state(p, n, kind).and_then(|s| residual_of(&s, &pot, &pts)) {
                    Ok(r) => CheckReport::new(
                        name,
                        kind,
                        *p,
                        r,
                        0.0,
                        self.tolerances.residual,
                        format!("max |Hψ − Eψ| / (|E| max|ψ|) over {RESIDUAL_POINTS} interior points"),
                    ),
                    Err(e) => CheckReport::error(name, kind, *p, e),
                }
            })
            .collect()
    }

    /// Closed-form normalization against the value transferred from the
    /// angle variable.
    pub fn check_normalization(&self, p: &WellParams, kind: ExtensionKind) -> Vec<CheckReport> {
        let tol = self.tolerances.normalization;
        (0..=i64::from(self.nmax))
            .map(|n| {
                let name = format!("normalization n={n}");
                let pair = self
                    .state(p, n, kind)
                    .and_then(|s| pdm_normalization_via_transfer(p, n, kind).map(|t| (s.normalization(), t)));
                match pair {
                    Ok((closed, transfer)) => CheckReport::new(
                        name,
                        kind,
                        *p,
                        transfer,
                        closed,
                        tol * closed.abs(),
                        format!("λ·(Scarf constant) vs closed form, relative tolerance {tol:e}"),
                    ),
                    Err(e) => CheckReport::error(name, kind, *p, e),
                }
            })
            .collect()
    }

    /// General X2 formulas against the three printed `ω = a = 1`, `b = 3`
    /// potentials.
    pub fn check_x2_printed_examples(&self) -> Vec<CheckReport> {
        let p = WellParams::reference();
        [ExtensionKind::X2TypeI, ExtensionKind::X2TypeII, ExtensionKind::X2TypeIII]
            .into_iter()
            .map(|kind| {
                let name = "printed x2 potential";
                let mut worst = 0.0_f64;
                for x in interior_points(&p, PCT_POINTS) {
                    match self.potential(&p, kind, x) {
                        Ok(v) => worst = worst.max((v - printed_x2(kind, x)).abs()),
                        Err(e) => return CheckReport::error(name, kind, p, e),
                    }
                }
                CheckReport::new(
                    name,
                    kind,
                    p,
                    worst,
                    0.0,
                    self.tolerances.printed,
                    format!("max |V_general − V_printed| over {PCT_POINTS} interior points"),
                )
            })
            .collect()
    }

    /// Degree, orthogonality under the pole-weighted measure and the
    /// differential equation for `P̂_{n+1}`, `n ≤ x1_nmax`, at the two
    /// parameter pairs `(A, B) = (7/2, 3/2)` and `(5, 2)`.
    pub fn check_x1_polynomials(&self, p: &WellParams) -> Vec<CheckReport> {
        let kind = ExtensionKind::X1;
        let mut out = Vec::new();
        for (a_cap, b_cap) in X1_CASES {
            let (alpha, beta) = (a_cap - b_cap - 0.5, a_cap + b_cap - 0.5);
            let tag = format!("(A, B) = ({a_cap}, {b_cap})");
            let polys: Result<Vec<_>> = (0..=self.x1_nmax).map(|n| self.x1(n, alpha, beta)).collect();
            let polys = match polys {
                Ok(v) => v,
                Err(e) => {
                    out.push(CheckReport::error(format!("x1 polynomials {tag}"), kind, *p, e));
                    continue;
                }
            };

            let degree_gap = polys
                .iter()
                .enumerate()
                .map(|(n, q)| (q.degree() as f64 - (n as f64 + 1.0)).abs())
                .fold(0.0, f64::max);
            out.push(CheckReport::new(
                format!("x1 degree {tag}"),
                kind,
                *p,
                degree_gap,
                0.0,
                0.0,
                format!("max |deg − (n+1)| for n = 0..{}", self.x1_nmax),
            ));

            let pole = x1_pole(alpha, beta);
            let rule = match gauss_legendre(X1_RULE_ORDER) {
                Ok(r) => r,
                Err(e) => {
                    out.push(CheckReport::error(format!("x1 orthogonality {tag}"), kind, *p, e));
                    continue;
                }
            };
            let inner = |f: &Polynomial, g: &Polynomial| {
                rule.integrate_jacobi_weighted(alpha, beta, |z| f.eval(z) * g.eval(z) / (z - pole).powi(2))
            };
            let norms: Vec<f64> = polys.iter().map(|q| inner(q, q).sqrt()).collect();
            let mut worst = 0.0_f64;
            for m in 0..polys.len() {
                for n in (m + 1)..polys.len() {
                    worst = worst.max((inner(&polys[m], &polys[n]) / (norms[m] * norms[n])).abs());
                }
            }
            out.push(CheckReport::new(
                format!("x1 orthogonality {tag}"),
                kind,
                *p,
                worst,
                0.0,
                self.tolerances.x1_orthogonality,
                format!("max normalized overlap for m ≠ n ≤ {}, pole at {pole}", self.x1_nmax),
            ));

            let zs: Vec<f64> = (1..=RESIDUAL_POINTS)
                .map(|i| -1.0 + 2.0 * i as f64 / (RESIDUAL_POINTS + 1) as f64)
                .collect();
            let mut worst = 0.0_f64;
            for (n, q) in polys.iter().enumerate() {
                let eps = (a_cap + n as f64).powi(2);
                let peak = zs.iter().map(|&z| q.eval(z).abs()).fold(0.0, f64::max);
                for &z in &zs {
                    worst = worst.max(x1_ode_residual(n as u32, alpha, beta, q, z).abs() / (eps * peak));
                }
            }
            out.push(CheckReport::new(
                format!("x1 ode residual {tag}"),
                kind,
                *p,
                worst,
                0.0,
                self.tolerances.x1_residual,
                format!("max scaled residual over {RESIDUAL_POINTS} interior points"),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verification::Checks;

    #[test]
    fn printed_transcriptions_differ_between_types() {
        let a = printed_x2(ExtensionKind::X2TypeI, 2.0);
        let b = printed_x2(ExtensionKind::X2TypeII, 2.0);
        let c = printed_x2(ExtensionKind::X2TypeIII, 2.0);
        assert!((a - b).abs() > 1e-3 && (b - c).abs() > 1e-3);
    }

    #[test]
    fn sign_flipped_c_bar_offsets_by_twice_its_size() {
        let p = WellParams::new(2.0, 1.0, 2.0).unwrap();
        let v = Verifier::default();
        let mut m = pct_map(&p);
        assert!(v.check_pct_with_map(&p, ExtensionKind::Base, &m).passed());
        m.c_bar = -m.c_bar;
        let r = v.check_pct_with_map(&p, ExtensionKind::Base, &m);
        assert!(!r.passed());
        assert!((r.observed - 2.0 * pct_map(&p).c_bar.abs()).abs() < 1e-9);
    }

    #[test]
    fn x1_suite_passes_and_detects_corruption() {
        let p = WellParams::reference();
        assert!(Verifier::default().check_x1_polynomials(&p).passed());
        let bad = Verifier::default().with_fault(Some(Fault::Polynomial));
        let r = bad.check_x1_polynomials(&p);
        assert!(r.iter().all(|c| !c.passed()), "{r:#?}");
    }
}
