//! Special functions: spherical Bessel functions and their zeros, spherical
//! harmonics, Clebsch–Gordan coefficients and harmonic product expansions.

pub mod bessel;
pub mod clebsch;
pub mod harmonics;
pub mod products;
pub mod zeros;

pub use bessel::{spherical_bessel, sph_jn, sph_jn_array, sph_jn_derivs};
pub use clebsch::{cg, clebsch_gordan};
pub use harmonics::{sph_harm, sph_harm_theta_deriv, ylm, AngularIndex, LegendreTable};
pub use products::{product_coefficient, product_expand};
pub use zeros::{bessel_zero, ZeroKind, ZeroTable};
