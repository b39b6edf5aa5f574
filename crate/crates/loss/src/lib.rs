//! Local spline simulator (LOSS): wave propagation with patched cubic
//! B-spline collocation.
//!
//! Spatial derivatives are evaluated by fitting cubic B-splines to the
//! wavefields along grid lines. The fit can run globally (one tridiagonal
//! sweep per line) or split into patches that recover the global spline
//! through perfectly matched boundary conditions: each patch exchanges a
//! single partial-sum scalar per junction with its axis neighbor. Time
//! stepping uses Strang splitting with exact flows for the stiff ADE-PML
//! memory dynamics, and a Fourier spectral solver provides reference
//! solutions for convergence studies.

pub mod banded;
pub mod field;
pub mod grid;
pub mod harness;
pub mod patched;
pub mod physics;
pub mod pml;
pub mod runtime;
pub mod spectral;
pub mod spline;

mod error;

pub use error::LossError;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, LossError>;
