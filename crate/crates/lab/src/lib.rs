//! Verification harness and command-line laboratory for `boussinesq-core`.
//!
//! [`checks`] holds one function per invariant and [`suite`] runs them all.
//! [`compare`] sets asymptotic predictions against exact fields, and [`cli`]
//! exposes everything through the `bsq-lab` binary.

pub mod checks;
pub mod cli;
pub mod compare;
pub mod config;
pub mod csvio;
pub mod report;
pub mod residual;
pub mod suite;
pub mod svg;
