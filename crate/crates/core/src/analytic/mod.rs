//! Closed-form spectra, wavefunctions and normalization constants.

mod wavefunction;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{ensure_valid, ExtensionKind, ScarfParams, WellParams};

pub use wavefunction::{
    normalization_consistency, pct_phase, pdm_normalization, pdm_normalization_via_transfer,
    pdm_wavefunction, scarf_normalization, scarf_wavefunction, PdmEigenfunction,
    ScarfEigenfunction, WavefunctionEval,
};

/// Closed-form level
/// `E_n = ((b+a)/(b−a)) ω (n+1/2) + n(n+1)/(ab) + ω²a²b²/(b−a)²`.
///
/// Total over the integers; which labels are physical depends on the kind
/// (see [`ExtensionKind::index_set`]).
pub fn energy(p: &WellParams, n: i64) -> f64 {
    let nf = n as f64;
    let (a, b, w) = (p.a, p.b, p.omega);
    let wd = b - a;
    (b + a) / wd * w * (nf + 0.5) + nf * (nf + 1.0) / (a * b) + w * w * a * a * b * b / (wd * wd)
}

/// Scarf I level `ε_n = (A+n)²`.
pub fn scarf_energy(s: &ScarfParams, n: i64) -> f64 {
    (s.a + n as f64).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub label: i64,
    pub energy: f64,
}

/// Labelled closed-form levels of one potential family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub kind: ExtensionKind,
    pub params: WellParams,
    pub entries: Vec<Level>,
}

impl SpectrumResult {
    pub fn energies(&self) -> Vec<f64> {
        self.entries.iter().map(|l| l.energy).collect()
    }
}

/// The first `count` levels of `kind`, labelled by its index set.
pub fn spectrum(p: &WellParams, kind: ExtensionKind, count: usize) -> Result<SpectrumResult> {
    ensure_valid(p, kind)?;
    let entries = kind
        .index_set(count)
        .into_iter()
        .map(|label| Level {
            label,
            energy: energy(p, label),
        })
        .collect();
    Ok(SpectrumResult {
        kind,
        params: *p,
        entries,
    })
}
