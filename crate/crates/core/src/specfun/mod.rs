//! Special-function kernels: log-gamma, classical Jacobi polynomials,
//! Gauss-Legendre quadrature and the X1-Jacobi exceptional polynomials.

mod gamma;
mod jacobi;
mod polynomial;
mod quadrature;
mod x1;

pub use gamma::log_gamma;
pub use jacobi::{jacobi_leading_coefficient, jacobi_p, jacobi_p_deriv, JacobiIndex};
pub use polynomial::Polynomial;
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use x1::{x1_jacobi, x1_ode_residual, x1_pole, x1_to_alt_normalization};
