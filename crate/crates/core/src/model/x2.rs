//! Rational terms of the three X2 extensions, in both variables.
//!
//! The u-space polynomials `N₁, N₂, D` (in `s = sin u`) and the x-space
//! polynomials `𝒩₁, 𝒩₂, 𝒟` are transcribed independently; the
//! transformation maps one onto the other, which the test-suite checks.

use serde::{Deserialize, Serialize};

use super::{ScarfParams, WellParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum X2Type {
    I,
    II,
    III,
}

/// `N₁/D + N₂/D²`, kept in parts so callers can inspect the denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalParts {
    pub n1: f64,
    pub n2: f64,
    pub d: f64,
}

impl RationalParts {
    pub fn value(&self) -> f64 {
        self.n1 / self.d + self.n2 / (self.d * self.d)
    }
}

/// u-space numerators and denominator at `s = sin u`.
pub fn x2_rational_u(sp: &ScarfParams, kind: X2Type, s: f64) -> RationalParts {
    let (a, b) = (sp.a, sp.b);
    match kind {
        X2Type::I => RationalParts {
            n1: -4.0
                * ((2.0 * a - 1.0) * (2.0 * b - 1.0) * (2.0 * b - 2.0) * s
                    + 2.0 * (2.0 * a - 1.0).powi(2)
                    - (2.0 * b - 2.0).powi(2) * (2.0 * b + 1.0)),
            n2: -8.0
                * (2.0 * b - 2.0)
                * (2.0 * a - 2.0 * b + 1.0)
                * (2.0 * a + 2.0 * b - 3.0)
                * (2.0 * (2.0 * a - 1.0) * (2.0 * b - 1.0) * s
                    - (2.0 * a - 1.0).powi(2)
                    - 2.0 * b * (2.0 * b - 2.0)),
            d: (2.0 * b - 1.0) * ((2.0 * b - 2.0) * s - (2.0 * a - 1.0)).powi(2)
                - (2.0 * a - 2.0 * b + 1.0) * (2.0 * a + 2.0 * b - 3.0),
        },
        X2Type::II => RationalParts {
            n1: -4.0
                * ((2.0 * a - 1.0) * (2.0 * b + 1.0) * (2.0 * b + 2.0) * s
                    - 2.0 * (2.0 * a - 1.0).powi(2)
                    - (2.0 * b + 2.0).powi(2) * (2.0 * b - 1.0)),
            n2: 8.0
                * (2.0 * b + 2.0)
                * (2.0 * a - 2.0 * b - 3.0)
                * (2.0 * a + 2.0 * b + 1.0)
                * (2.0 * (2.0 * a - 1.0) * (2.0 * b + 1.0) * s
                    - (2.0 * a - 1.0).powi(2)
                    - 2.0 * b * (2.0 * b + 2.0)),
            d: (2.0 * b + 1.0) * ((2.0 * b + 2.0) * s - (2.0 * a - 1.0)).powi(2)
                + (2.0 * a - 2.0 * b - 3.0) * (2.0 * a + 2.0 * b + 1.0),
        },
        X2Type::III => RationalParts {
            n1: -8.0
                * (b * (2.0 * a - 2.0) * (2.0 * a - 3.0) * s - a * (2.0 * a - 3.0).powi(2)
                    + 4.0 * b * b),
            n2: 8.0
                * (2.0 * a - 3.0)
                * (2.0 * a - 2.0 * b - 3.0)
                * (2.0 * a + 2.0 * b - 3.0)
                * (4.0 * b * (2.0 * a - 2.0) * s - 4.0 * b * b - (2.0 * a - 1.0) * (2.0 * a - 3.0)),
            d: (2.0 * a - 2.0) * ((2.0 * a - 3.0) * s - 2.0 * b).powi(2)
                + (2.0 * a - 2.0 * b - 3.0) * (2.0 * a + 2.0 * b - 3.0),
        },
    }
}

/// x-space numerators and denominator, general in `(ω, a, b)`.
pub fn x2_rational_x(p: &WellParams, kind: X2Type, x: f64) -> RationalParts {
    let (omega, a, b) = (p.omega, p.a, p.b);
    let w = p.omega_ab();
    let ab = a * b;
    let wd = b - a;
    let w2a3b3 = omega * omega * ab.powi(3);
    match kind {
        X2Type::I => RationalParts {
            n1: 8.0 / (ab * wd * wd)
                * (w * (w - 1.0) * (w - 2.0) * ((a + b) * x - 2.0 * ab)
                    - w * w * (a + b).powi(2)
                    - (w - 2.0) * wd * wd),
            n2: 128.0 * omega / wd.powi(4)
                * (w - 2.0)
                * (w2a3b3 + (w - 1.0) * wd * wd)
                * ((a + b) * (w - 1.0) * x - ab * (w - 2.0)),
            d: 4.0 / (wd * wd)
                * ((w - 1.0) * ((w - 2.0) * x + 2.0 * a) * ((w - 2.0) * x + 2.0 * b) - w2a3b3),
        },
        X2Type::II => RationalParts {
            n1: 8.0 / (ab * wd * wd)
                * (w * (w + 1.0) * (w + 2.0) * ((a + b) * x - 2.0 * ab)
                    + w * w * (a + b).powi(2)
                    - wd * wd * (w + 2.0)),
            n2: 128.0 * omega / wd.powi(4)
                * (w + 2.0)
                * (w2a3b3 - (w + 1.0) * wd * wd)
                * (-(a + b) * (w + 1.0) * x + ab * (w + 2.0)),
            d: 4.0 / (wd * wd)
                * ((w + 1.0) * ((w + 2.0) * x - 2.0 * a) * ((w + 2.0) * x - 2.0 * b) + w2a3b3),
        },
        X2Type::III => {
            let k = w * (a + b);
            let g = omega * ab * ab;
            RationalParts {
                n1: -8.0 / (ab * wd.powi(3))
                    * (-w * (k - wd) * (k - 2.0 * wd) * x + (k - 2.0 * wd) * wd * wd
                        + w * w * wd.powi(3)),
                n2: 128.0 * omega / wd.powi(5)
                    * (k - 2.0 * wd)
                    * (w2a3b3 - wd * (k - wd))
                    * (-(k - wd) * x + g),
                d: 4.0 / wd.powi(5)
                    * ((k - wd)
                        * ((k - 2.0 * wd) * x - 2.0 * g + 2.0 * a * wd)
                        * ((k - 2.0 * wd) * x - 2.0 * g + 2.0 * b * wd)
                        + w2a3b3 * wd.powi(3)),
            }
        }
    }
}
