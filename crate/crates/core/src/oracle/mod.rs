//! Point-matching eigenvalue solver (method of particular solutions).
//!
//! The field is expanded in regular spherical waves `j_l(k|x - c|) S_l^m`
//! about a centre `c`. For each trial `k` the boundary-condition rows at
//! collocation points are stacked on value rows at interior points, the
//! stack is orthonormalised, and the smallest singular value of its boundary
//! block is taken as `σ(k)`. Eigenvalues are the `k` where `σ` dips towards 0.
//! Symmetric shapes are solved one symmetry sector at a time.

mod basis;
mod solver;

pub use basis::Sector;
pub use solver::{
    find_eigenvalues, nearest_eigenvalue, sigma_min, Collocation, CollocationConfig, OracleEigen, OracleResult,
};

use crate::geometry::{BoundaryShape, Symmetry};

/// Symmetry sector holding the states that continue the sphere mode
/// `(l, |m|)` on `shape`.
pub fn sector_for(shape: &BoundaryShape, l: u32, m_abs: u32) -> Sector {
    match shape.symmetry() {
        Symmetry::Spherical => Sector::Azimuthal { m: m_abs, parity: Some((l - m_abs) % 2) },
        Symmetry::Axisymmetric { mirror } => Sector::Azimuthal {
            m: m_abs,
            parity: mirror.then_some((l - m_abs) % 2),
        },
        Symmetry::Cubic if l == 0 => Sector::Cubic,
        _ => Sector::Full,
    }
}
