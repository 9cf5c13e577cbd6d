//! Solitons, direct scattering and long-time asymptotics for the
//! Boussinesq equation `u_tt = u_xx + (u^2)_xx + u_xxxx`.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: scalar abstraction (double and double-double), dense complex
//!   LU, Gauss-Legendre rules, Chebyshev interpolation, complex log-Gamma and an
//!   adaptive Runge-Kutta integrator.
//! * [`spectral`]: the kernels `l_j`, `z_j`, phase functions, saddle points,
//!   region classification and the twelve-point symmetry orbit.
//! * [`spectrum`]: discrete scattering data (breathers and real solitons).
//! * [`soliton`]: exact multi-soliton fields from the determinant formula.
//! * [`scattering`]: eigenfunctions, scattering matrices, reflection
//!   coefficients, zeros of `s11` and residue constants from initial data.
//! * [`asymptotics`]: modulation factors, the pole-only Riemann-Hilbert solver
//!   and the soliton, radiation and leading-wave asymptotic formulas.

pub mod asymptotics;
pub mod error;
pub mod numeric;
pub mod scattering;
pub mod soliton;
pub mod spectral;
pub mod spectrum;

pub use error::{CoreError, Result};
pub use num_complex::Complex64;
