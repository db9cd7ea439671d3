//! Hermite spectral collocation for fractional Laplacian problems on
//! unbounded domains.
//!
//! The crate builds explicit differentiation matrices for the fractional
//! Laplacian (−Δ)^{α/2} over Hermite-type bases on ℝ and ℝ², solves linear,
//! multi-term, nonlinear, and eigenvalue problems with them, and ships a
//! benchmark harness that reproduces the convergence and conditioning
//! studies behind the method.
//!
//! Start with [`fracdm::dm_overscaled_1d`] / [`fracdm::dm_normalized_1d`]
//! for matrices, [`solve::solve_linear`] / [`solve::solve_newton`] for
//! collocation solves, and [`bench::run_convergence`] for full experiment
//! sweeps. The `examples/` directory has one runnable program per
//! capability.

// parity tests read better as explicit remainders next to the recurrences,
// and frozen reference constants keep their full printed precision
#![allow(clippy::manual_is_multiple_of)]
#![allow(clippy::excessive_precision)]
#![allow(clippy::needless_range_loop)]

pub mod basis;
pub mod bench;
mod dd;
pub mod error;
pub mod fracdm;
pub mod quadrature;
pub mod solve;
pub mod specfun;

pub use basis::BasisKind;
pub use error::{Error, Result};
