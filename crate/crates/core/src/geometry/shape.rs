//! Star-shaped boundary surfaces `r(θ, φ)`.

use serde::{Deserialize, Serialize};

use super::expansion::HarmonicExpansion;
use super::tabulated::TabulatedGrid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryShape {
    Sphere { radius: f64 },
    /// `(x² + y²)/r_a² + z²/r_c² = 1`.
    Spheroid { ra: f64, rc: f64 },
    /// `|ρ/a|^n + |z/c|^n = 1` with `ρ² = x² + y²`.
    Superegg { a: f64, c: f64, n: f64 },
    /// `|x|^t + |y|^t + |z|^t = 1`.
    Superquadric { t: f64 },
    Tabulated(TabulatedGrid),
    /// `R0 (1 + Σ C_a^b Y_a^b)` given directly by its coefficients.
    Harmonic(HarmonicExpansion),
}

/// Point symmetry of a shape, as used to block-diagonalise the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    Spherical,
    /// Rotationally symmetric about `z`; `mirror` if also symmetric under
    /// `z -> -z`.
    Axisymmetric { mirror: bool },
    /// Full octahedral group (the superquadric).
    Cubic,
    General,
}

/// `r` with its angular derivatives at one direction.
#[derive(Debug, Clone, Copy)]
pub struct RadiusJet {
    pub r: f64,
    pub dr_dtheta: f64,
    pub dr_dphi: f64,
}

impl BoundaryShape {
    pub fn sphere(radius: f64) -> Self {
        BoundaryShape::Sphere { radius }
    }

    /// Checks that every parameter is a positive finite number.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidShape(format!("{name} must be positive and finite, got {v}")))
            }
        };
        match self {
            BoundaryShape::Sphere { radius } => positive("radius", *radius),
            BoundaryShape::Spheroid { ra, rc } => {
                positive("r_a", *ra)?;
                positive("r_c", *rc)
            }
            BoundaryShape::Superegg { a, c, n } => {
                positive("a", *a)?;
                positive("c", *c)?;
                positive("n", *n)
            }
            BoundaryShape::Superquadric { t } => positive("t", *t),
            BoundaryShape::Tabulated(grid) => grid.validate(),
            BoundaryShape::Harmonic(h) => {
                positive("R0", h.r0)?;
                if h.coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                    return Err(Error::InvalidShape("non-finite harmonic coefficient".into()));
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BoundaryShape::Sphere { .. } => "sphere",
            BoundaryShape::Spheroid { .. } => "spheroid",
            BoundaryShape::Superegg { .. } => "superegg",
            BoundaryShape::Superquadric { .. } => "superquadric",
            BoundaryShape::Tabulated(_) => "tabulated",
            BoundaryShape::Harmonic(_) => "harmonic",
        }
    }

    pub fn symmetry(&self) -> Symmetry {
        match self {
            BoundaryShape::Sphere { .. } => Symmetry::Spherical,
            BoundaryShape::Spheroid { ra, rc } if ra == rc => Symmetry::Spherical,
            BoundaryShape::Spheroid { .. } | BoundaryShape::Superegg { .. } => {
                Symmetry::Axisymmetric { mirror: true }
            }
            BoundaryShape::Superquadric { t } if *t == 2.0 => Symmetry::Spherical,
            BoundaryShape::Superquadric { .. } => Symmetry::Cubic,
            BoundaryShape::Tabulated(_) => Symmetry::General,
            BoundaryShape::Harmonic(h) => {
                if h.is_axisymmetric(0.0) {
                    let mirror = (1..=h.a_max).step_by(2).all(|a| h.get(a, 0).norm() == 0.0);
                    if h.coeffs.iter().all(|c| c.norm() == 0.0) {
                        Symmetry::Spherical
                    } else {
                        Symmetry::Axisymmetric { mirror }
                    }
                } else {
                    Symmetry::General
                }
            }
        }
    }

    pub fn is_axisymmetric(&self) -> bool {
        matches!(self.symmetry(), Symmetry::Spherical | Symmetry::Axisymmetric { .. })
    }

    /// `r(θ, φ)`.
    pub fn radius(&self, theta: f64, phi: f64) -> f64 {
        match self {
            BoundaryShape::Sphere { radius } => *radius,
            BoundaryShape::Spheroid { ra, rc } => {
                let e = 1.0 - ra * ra / (rc * rc);
                let c = theta.cos();
                ra / (1.0 - e * c * c).sqrt()
            }
            BoundaryShape::Superegg { a, c, n } => {
                let (s, co) = theta.sin_cos();
                let f = (co / c).abs().powf(*n) + (s / a).abs().powf(*n);
                f.powf(-1.0 / n)
            }
            BoundaryShape::Superquadric { t } => {
                let (s, c) = theta.sin_cos();
                let (sp, cp) = phi.sin_cos();
                let f = (s * cp).abs().powf(*t) + (s * sp).abs().powf(*t) + c.abs().powf(*t);
                f.powf(-1.0 / t)
            }
            BoundaryShape::Tabulated(grid) => grid.interpolate(theta, phi),
            BoundaryShape::Harmonic(h) => h.reconstruct(theta, phi),
        }
    }

    /// `r` and its first angular derivatives. Closed forms where available,
    /// central differences of the interpolant for tabulated shapes.
    pub fn radius_jet(&self, theta: f64, phi: f64) -> RadiusJet {
        match self {
            BoundaryShape::Sphere { radius } => RadiusJet { r: *radius, dr_dtheta: 0.0, dr_dphi: 0.0 },
            BoundaryShape::Spheroid { ra, rc } => {
                let e = 1.0 - ra * ra / (rc * rc);
                let (s, c) = theta.sin_cos();
                let q = 1.0 - e * c * c;
                RadiusJet {
                    r: ra / q.sqrt(),
                    dr_dtheta: -ra * e * c * s / (q * q.sqrt()),
                    dr_dphi: 0.0,
                }
            }
            BoundaryShape::Superegg { a, c, n } => {
                let (s, co) = theta.sin_cos();
                let (u, v) = (co / c, s / a);
                let f = u.abs().powf(*n) + v.abs().powf(*n);
                let df = n * (signed_pow(u, n - 1.0) * (-s / c) + signed_pow(v, n - 1.0) * (co / a));
                let r = f.powf(-1.0 / n);
                RadiusJet { r, dr_dtheta: -r / (n * f) * df, dr_dphi: 0.0 }
            }
            BoundaryShape::Superquadric { t } => {
                let (s, c) = theta.sin_cos();
                let (sp, cp) = phi.sin_cos();
                let (x, y, z) = (s * cp, s * sp, c);
                let f = x.abs().powf(*t) + y.abs().powf(*t) + z.abs().powf(*t);
                let (gx, gy, gz) = (signed_pow(x, t - 1.0), signed_pow(y, t - 1.0), signed_pow(z, t - 1.0));
                let df_dtheta = t * (gx * c * cp + gy * c * sp - gz * s);
                let df_dphi = t * (-gx * s * sp + gy * s * cp);
                let r = f.powf(-1.0 / t);
                let k = -r / (t * f);
                RadiusJet { r, dr_dtheta: k * df_dtheta, dr_dphi: k * df_dphi }
            }
            BoundaryShape::Tabulated(grid) => {
                let h = 1e-5;
                let r = grid.interpolate(theta, phi);
                let (t0, t1) = ((theta - h).max(0.0), (theta + h).min(std::f64::consts::PI));
                let dr_dtheta = (grid.interpolate(t1, phi) - grid.interpolate(t0, phi)) / (t1 - t0);
                let dr_dphi = (grid.interpolate(theta, phi + h) - grid.interpolate(theta, phi - h)) / (2.0 * h);
                RadiusJet { r, dr_dtheta, dr_dphi }
            }
            BoundaryShape::Harmonic(h) => h.reconstruct_jet(theta, phi),
        }
    }
}

fn signed_pow(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    x.signum() * x.abs().powf(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fd_check(shape: &BoundaryShape) {
        let h = 1e-6;
        for &(t, p) in &[(0.4, 0.3), (1.1, 2.0), (2.5, 4.4), (1.7, 5.9)] {
            let jet = shape.radius_jet(t, p);
            assert!((jet.r - shape.radius(t, p)).abs() < 1e-14);
            let dt = (shape.radius(t + h, p) - shape.radius(t - h, p)) / (2.0 * h);
            let dp = (shape.radius(t, p + h) - shape.radius(t, p - h)) / (2.0 * h);
            assert!((jet.dr_dtheta - dt).abs() < 1e-7, "{shape:?} θ-derivative at ({t}, {p})");
            assert!((jet.dr_dphi - dp).abs() < 1e-7, "{shape:?} φ-derivative at ({t}, {p})");
        }
    }

    #[test]
    fn closed_form_values() {
        let s = BoundaryShape::Spheroid { ra: 1.0, rc: 0.75 };
        assert!((s.radius(0.0, 0.0) - 0.75).abs() < 1e-15);
        assert!((s.radius(PI / 2.0, 1.0) - 1.0).abs() < 1e-15);
        let q = BoundaryShape::Superquadric { t: 2.0 };
        assert!((q.radius(0.7, 2.1) - 1.0).abs() < 1e-15);
        let e = BoundaryShape::Superegg { a: 1.0, c: 1.0, n: 2.0 };
        assert!((e.radius(PI / 3.0, 0.0) - 1.0).abs() < 1e-15);
        // cube face centre and octahedron vertex
        let cube = BoundaryShape::Superquadric { t: 20.0 };
        assert!((cube.radius(PI / 2.0, 0.0) - 1.0).abs() < 1e-15);
        let oct = BoundaryShape::Superquadric { t: 1.0 };
        let diag = (1.0f64 / 3.0).sqrt().acos();
        assert!((oct.radius(diag, PI / 4.0) - 1.0 / 3.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        fd_check(&BoundaryShape::Spheroid { ra: 1.1, rc: 0.83 });
        fd_check(&BoundaryShape::Spheroid { ra: 0.93, rc: 1.16 });
        fd_check(&BoundaryShape::Superegg { a: 1.0, c: 1.0, n: 2.7 });
        fd_check(&BoundaryShape::Superquadric { t: 3.5 });
        fd_check(&BoundaryShape::sphere(2.0));
    }

    #[test]
    fn symmetry_classes() {
        assert_eq!(BoundaryShape::sphere(1.0).symmetry(), Symmetry::Spherical);
        assert_eq!(
            BoundaryShape::Spheroid { ra: 1.0, rc: 0.9 }.symmetry(),
            Symmetry::Axisymmetric { mirror: true }
        );
        assert_eq!(BoundaryShape::Superquadric { t: 4.0 }.symmetry(), Symmetry::Cubic);
    }

    #[test]
    fn validation() {
        assert!(BoundaryShape::sphere(-1.0).validate().is_err());
        assert!(BoundaryShape::Spheroid { ra: 1.0, rc: f64::NAN }.validate().is_err());
        assert!(BoundaryShape::Superquadric { t: 0.0 }.validate().is_err());
        assert!(BoundaryShape::Superegg { a: 1.0, c: 1.0, n: 1.5 }.validate().is_ok());
    }
}
