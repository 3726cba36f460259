//! Numerical laboratory for spherical means, Fourier extension operators and
//! pinned distance measures.
//!
//! The crate evaluates both sides of the identity
//!
//! ```text
//! ∫_0^∞ |ω_t * f(x)|² t^{d-1} dt = ∫_0^∞ |ω̂_r * f(x)|² r^{d-1} dr
//! ```
//!
//! through independent quadrature paths, together with Mattila-type
//! integrals, smoothed pinned distance densities on fractal point clouds, and
//! the exponent algebra relating spherical-average decay to dimension
//! thresholds.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod constants;
pub mod error;
pub mod measures;
pub mod operators;
pub mod quadrature;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};
