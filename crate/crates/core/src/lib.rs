//! Exactly solvable position-dependent-mass quantum well.
//!
//! The crate models the BenDaniel-Duke Schrödinger equation
//! `(−d/dx M⁻¹ d/dx + V_eff) ψ = E ψ` for the oscillator-shaped well with
//! mass `M(x) = ab/((x−a)(b−x))` between walls at `a` and `b`, its exact
//! solution through a point canonical transformation from the Scarf I
//! potential, and the rational extensions built from X1- and X2-Jacobi
//! exceptional orthogonal polynomials.
//!
//! * [`specfun`]: log-gamma, Jacobi polynomials, Gauss-Legendre rules, X1-Jacobi polynomials.
//! * [`model`]: parameters, potentials, the transformation.
//! * [`analytic`]: closed-form spectra, wavefunctions and normalizations.
//! * [`eigensolver`]: finite-difference verification in either variable.
//! * [`verification`]: checks and the JSON report.
//!
//! ```
//! use pdmwell::{analytic, model::WellParams};
//!
//! let p = WellParams::reference();
//! assert!((analytic::energy(&p, 0) - 13.0 / 4.0).abs() < 1e-14);
//! ```

// `!(x > bound)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod eigensolver;
mod error;
pub mod model;
pub mod specfun;
pub mod verification;

pub use error::{Error, Result};
pub use model::{ExtensionKind, ScarfParams, WellParams};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/well.md")]
    mod well {}
    #[doc = include_str!("../../../book/src/transformation.md")]
    mod transformation {}
    #[doc = include_str!("../../../book/src/exceptional.md")]
    mod exceptional {}
    #[doc = include_str!("../../../book/src/x2.md")]
    mod x2 {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
