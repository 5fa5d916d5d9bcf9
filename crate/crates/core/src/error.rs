use thiserror::Error;

use crate::model::Violation;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    /// Model parameters violate one or more admissibility inequalities.
    #[error("parameter constraints violated: {}", names(.0))]
    Constraint(Vec<Violation>),

    /// A rational-extension denominator vanished at the evaluation point.
    #[error("singular extension: denominator vanishes at {at}")]
    SingularExtension { at: f64 },

    /// The collocation system for an exceptional polynomial did not have a
    /// one-dimensional nullspace.
    #[error("degenerate construction: nullspace dimension {nullity}, expected 1")]
    DegenerateConstruction { nullity: usize },

    /// The sampled potential was not finite at a grid node.
    #[error("singular potential at node {node} (coordinate {coordinate}, value {value})")]
    SingularPotential {
        node: usize,
        coordinate: f64,
        value: f64,
    },

    /// Iterative numerics failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A solver configuration is inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),
}

fn names(v: &[Violation]) -> String {
    v.iter()
        .map(|c| c.name.as_str())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
