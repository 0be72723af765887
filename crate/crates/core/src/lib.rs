//! Eigenvalues of the Helmholtz equation `(∇² + E) ψ = 0` inside near-spherical
//! cavities, with Dirichlet or Neumann walls.
//!
//! The boundary `r(θ, φ)` is written as a sphere of mean radius `R0` plus a
//! spherical-harmonic deformation `R0 Σ C_a^b Y_a^b`. Eigenvalues are then
//! corrected order by order about the sphere:
//!
//! * [`specfun`]: spherical Bessel functions and their zeros, spherical
//!   harmonics, Clebsch–Gordan coefficients and harmonic product expansions.
//! * [`geometry`]: boundary shapes, sphere quadrature, mean radius and the
//!   harmonic expansion of a boundary.
//! * [`perturb`]: zeroth, first and second order eigenvalue corrections and
//!   first/second order wavefunction coefficients.
//! * [`oracle`]: an independent point-matching eigenvalue solver used to
//!   check the perturbative results.

pub mod error;
pub mod geometry;
pub mod oracle;
pub mod parallel;
pub mod perturb;
pub mod specfun;

pub use error::{Error, Result};
pub use geometry::{BoundaryShape, HarmonicExpansion, QuadratureGrid};
pub use perturb::{BoundaryCondition, CorrectionResult, ModeSpec, UnperturbedMode};
