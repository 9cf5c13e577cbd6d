//! Numerical building blocks shared by the spectral modules.

pub mod chebyshev;
pub mod gamma;
pub mod linalg;
pub mod ode;
pub mod quadrature;
pub mod real;
pub mod spline;

pub use real::{Dd, Real};
