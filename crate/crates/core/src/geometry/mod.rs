//! Boundary shapes, quadrature on the sphere, mean radius and the
//! spherical-harmonic expansion of a boundary.

pub mod expansion;
pub mod quadrature;
pub mod shape;
pub mod tabulated;

pub use expansion::{
    centroid, expand, mean_radius, oblate_mean_radius, volume, volume_normalized_spheroid,
    HarmonicExpansion, DEFAULT_A_MAX,
};
pub use quadrature::QuadratureGrid;
pub use shape::{BoundaryShape, RadiusJet, Symmetry};
pub use tabulated::TabulatedGrid;
