//! Mean radius and spherical-harmonic expansion
//! `r(θ, φ) = R0 (1 + Σ_{a>=1} Σ_b C_a^b Y_a^b(θ, φ))` of a boundary.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::quadrature::QuadratureGrid;
use super::shape::{BoundaryShape, RadiusJet, Symmetry};
use crate::error::{Error, Result};
use crate::specfun::LegendreTable;

pub const DEFAULT_A_MAX: usize = 24;

/// Mean radius `R0` and relative deformation coefficients `C_a^b`.
///
/// `coeffs` is dense over `0 <= a <= a_max`, `-a <= b <= a`, stored at index
/// `a² + a + b`; the `a = 0` entry is always zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicExpansion {
    pub r0: f64,
    pub a_max: usize,
    pub coeffs: Vec<Complex64>,
    /// Largest reconstruction error `|r - R0(1 + f)|` seen on the grid used to
    /// compute the expansion; zero for expansions built by hand.
    pub tail_norm: f64,
}

#[inline]
pub fn coeff_index(a: usize, b: i64) -> usize {
    ((a * a + a) as i64 + b) as usize
}

impl HarmonicExpansion {
    /// Sphere of radius `r0` with room for coefficients up to `a_max`.
    pub fn sphere(r0: f64, a_max: usize) -> Self {
        Self { r0, a_max, coeffs: vec![Complex64::new(0.0, 0.0); (a_max + 1) * (a_max + 1)], tail_norm: 0.0 }
    }

    /// Axisymmetric expansion from `C_a^0` values, `c[a]` for `a = 0..`.
    /// The `a = 0` entry is ignored.
    pub fn axisymmetric(r0: f64, c: &[f64]) -> Self {
        let a_max = c.len().saturating_sub(1).max(1);
        let mut e = Self::sphere(r0, a_max);
        for (a, v) in c.iter().enumerate().skip(1) {
            e.coeffs[coeff_index(a, 0)] = Complex64::new(*v, 0.0);
        }
        e
    }

    /// `C_a^b`; zero outside the stored range.
    pub fn get(&self, a: usize, b: i64) -> Complex64 {
        if a > self.a_max || b.unsigned_abs() as usize > a {
            return Complex64::new(0.0, 0.0);
        }
        let i = (a * a + a) as i64 + b;
        self.coeffs[i as usize]
    }

    /// Sets `C_a^b = v` and `C_a^{-b} = (-1)^b conj(v)` so that the surface
    /// stays real.
    pub fn set_real(&mut self, a: usize, b: i64, v: Complex64) -> Result<()> {
        if a == 0 || a > self.a_max || b.unsigned_abs() as usize > a {
            return Err(Error::Domain(format!("coefficient ({a}, {b}) outside 1..={}", self.a_max)));
        }
        let v = if b == 0 { Complex64::new(v.re, 0.0) } else { v };
        let partner = if b % 2 == 0 { v.conj() } else { -v.conj() };
        let base = (a * a + a) as i64;
        self.coeffs[(base + b) as usize] = v;
        self.coeffs[(base - b) as usize] = partner;
        Ok(())
    }

    /// Nonzero coefficients `(a, b, C_a^b)` with `|C| > tol`.
    pub fn nonzero(&self, tol: f64) -> impl Iterator<Item = (usize, i64, Complex64)> + '_ {
        (1..=self.a_max).flat_map(move |a| {
            (-(a as i64)..=a as i64).filter_map(move |b| {
                let c = self.get(a, b);
                (c.norm() > tol).then_some((a, b, c))
            })
        })
    }

    pub fn is_axisymmetric(&self, tol: f64) -> bool {
        self.nonzero(tol).all(|(_, b, _)| b == 0)
    }

    /// Largest `a` with a coefficient above `tol`, or 0 for a sphere.
    pub fn effective_degree(&self, tol: f64) -> usize {
        self.nonzero(tol).map(|(a, _, _)| a).max().unwrap_or(0)
    }

    /// All coefficients multiplied by `s` (the deformation strength).
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            r0: self.r0,
            a_max: self.a_max,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            tail_norm: self.tail_norm * s.abs(),
        }
    }

    /// Drops every coefficient above degree `a_max`.
    pub fn truncated(&self, a_max: usize) -> Self {
        if a_max >= self.a_max {
            return self.clone();
        }
        Self {
            r0: self.r0,
            a_max,
            coeffs: self.coeffs[..(a_max + 1) * (a_max + 1)].to_vec(),
            tail_norm: self.tail_norm,
        }
    }

    /// `f(θ, φ) = Σ C_a^b Y_a^b`, real part.
    pub fn deformation(&self, theta: f64, phi: f64) -> f64 {
        let table = LegendreTable::new(self.a_max, theta);
        let mut sum = 0.0;
        for a in 1..=self.a_max {
            for b in -(a as i64)..=a as i64 {
                let c = self.get(a, b);
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                let y = Complex64::from_polar(table.get_signed(a, b), b as f64 * phi);
                sum += (c * y).re;
            }
        }
        sum
    }

    /// `R0 (1 + f(θ, φ))`.
    pub fn reconstruct(&self, theta: f64, phi: f64) -> f64 {
        self.r0 * (1.0 + self.deformation(theta, phi))
    }

    pub(crate) fn reconstruct_jet(&self, theta: f64, phi: f64) -> RadiusJet {
        let table = LegendreTable::new(self.a_max, theta);
        let (mut f, mut ft, mut fp) = (0.0, 0.0, 0.0);
        for a in 1..=self.a_max {
            for b in -(a as i64)..=a as i64 {
                let c = self.get(a, b);
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                let e = Complex64::from_polar(1.0, b as f64 * phi);
                let sign = if b < 0 && b % 2 != 0 { -1.0 } else { 1.0 };
                let p = sign * table.get(a, b.unsigned_abs() as usize);
                let dp = sign * table.theta_deriv(a, b.unsigned_abs() as usize);
                f += (c * e * p).re;
                ft += (c * e * dp).re;
                fp += (c * e * Complex64::new(0.0, b as f64) * p).re;
            }
        }
        RadiusJet { r: self.r0 * (1.0 + f), dr_dtheta: self.r0 * ft, dr_dphi: self.r0 * fp }
    }

    /// A reproducible random real surface. Raw coefficients are uniform in
    /// `[-1, 1]` damped by `1/a`, then normalised so that
    /// `Σ |C_a^b|² = amplitude²`. With `axisymmetric` only `b = 0` is drawn.
    pub fn random(seed: u64, r0: f64, a_max: usize, amplitude: f64, axisymmetric: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e = Self::sphere(r0, a_max.max(1));
        for a in 1..=a_max {
            let damp = 1.0 / a as f64;
            let b_max = if axisymmetric { 0 } else { a as i64 };
            for b in 0..=b_max {
                let re = rng.random_range(-1.0..1.0) * damp;
                let im = if b == 0 { 0.0 } else { rng.random_range(-1.0..1.0) * damp };
                e.set_real(a, b, Complex64::new(re, im)).expect("index in range");
            }
        }
        let norm: f64 = e.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            e = e.scaled(amplitude / norm);
        }
        e
    }
}

/// `R0 = (1/4π) ∬ r dΩ`.
pub fn mean_radius(shape: &BoundaryShape, grid: &QuadratureGrid) -> f64 {
    match shape {
        BoundaryShape::Sphere { radius } => *radius,
        BoundaryShape::Harmonic(h) => h.r0,
        _ => grid.integrate(|t, p| shape.radius(t, p)) / (4.0 * PI),
    }
}

/// `(r_a r_c / sqrt(r_a² - r_c²)) asinh(sqrt(r_a² - r_c²) / r_c)`, defined for
/// oblate spheroids (`r_c < r_a`) only.
pub fn oblate_mean_radius(ra: f64, rc: f64) -> Option<f64> {
    if !(rc < ra) || rc <= 0.0 {
        return None;
    }
    let d = (ra * ra - rc * rc).sqrt();
    Some(ra * rc / d * (d / rc).asinh())
}

/// Spheroid with the volume of the unit sphere (`r_a² r_c = 1`) and
/// `r_c / r_a = ratio`. Ratio 1 gives the unit sphere.
pub fn volume_normalized_spheroid(ratio: f64) -> Result<BoundaryShape> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::InvalidShape(format!("spheroid ratio must be positive, got {ratio}")));
    }
    if ratio == 1.0 {
        return Ok(BoundaryShape::sphere(1.0));
    }
    let ra = ratio.powf(-1.0 / 3.0);
    Ok(BoundaryShape::Spheroid { ra, rc: ratio * ra })
}

/// Enclosed volume `(1/3) ∬ r³ dΩ`.
pub fn volume(shape: &BoundaryShape, grid: &QuadratureGrid) -> f64 {
    grid.integrate(|t, p| shape.radius(t, p).powi(3)) / 3.0
}

/// Centre of mass of the enclosed solid.
pub fn centroid(shape: &BoundaryShape, grid: &QuadratureGrid) -> [f64; 3] {
    let v = volume(shape, grid);
    let mut c = [0.0; 3];
    for (k, ck) in c.iter_mut().enumerate() {
        *ck = grid.integrate(|t, p| {
            let r = shape.radius(t, p);
            let (st, ct) = t.sin_cos();
            let (sp, cp) = p.sin_cos();
            let u = [st * cp, st * sp, ct][k];
            r.powi(4) / 4.0 * u
        }) / v;
    }
    c
}

/// Expands `shape` up to degree `a_max` on `grid`.
///
/// `C_a^b = ∬ conj(Y_a^b) (r/R0 - 1) dΩ`, with `R0` from [`mean_radius`].
/// Coefficients forbidden by the shape's point symmetry are set to zero, so
/// quadrature aliasing of non-smooth shapes cannot leak into them.
pub fn expand(shape: &BoundaryShape, a_max: usize, grid: &QuadratureGrid) -> Result<HarmonicExpansion> {
    if a_max == 0 {
        return Err(Error::Domain("a_max must be at least 1".into()));
    }
    let (nt, np) = (grid.n_theta(), grid.n_phi());
    if nt < a_max + 1 || np < 2 * a_max + 1 {
        return Err(Error::GridTooCoarse {
            a_max,
            n_theta: nt,
            n_phi: np,
            need_theta: a_max + 1,
            need_phi: 2 * a_max + 1,
        });
    }
    shape.validate()?;
    let radii: Vec<Vec<f64>> = grid
        .theta
        .iter()
        .map(|&t| grid.phi.iter().map(|&p| shape.radius(t, p)).collect())
        .collect();
    let r0 = match shape {
        BoundaryShape::Sphere { radius } => *radius,
        BoundaryShape::Harmonic(h) => h.r0,
        _ => {
            let s: f64 = radii
                .iter()
                .zip(&grid.theta_weights)
                .map(|(row, w)| w * row.iter().sum::<f64>())
                .sum();
            s * grid.phi_weight / (4.0 * PI)
        }
    };
    let mut out = HarmonicExpansion::sphere(r0, a_max);
    // Unit phasors e^{-iφ_j}, raised to the power b incrementally.
    let step: Vec<Complex64> = grid.phi.iter().map(|&p| Complex64::from_polar(1.0, -p)).collect();
    for (i, row) in radii.iter().enumerate() {
        let f: Vec<f64> = row.iter().map(|r| r / r0 - 1.0).collect();
        let mut phase = vec![Complex64::new(1.0, 0.0); np];
        let mut g = Vec::with_capacity(a_max + 1);
        for b in 0..=a_max {
            if b > 0 {
                for (ph, s) in phase.iter_mut().zip(&step) {
                    *ph *= s;
                }
            }
            let sum: Complex64 = f.iter().zip(&phase).map(|(fj, ph)| ph * fj).sum();
            g.push(sum * grid.phi_weight);
        }
        let table = LegendreTable::new(a_max, grid.theta[i]);
        let w = grid.theta_weights[i];
        for a in 1..=a_max {
            for (b, gb) in g.iter().enumerate().take(a + 1) {
                let v = gb * (w * table.get(a, b));
                out.coeffs[coeff_index(a, b as i64)] += v;
            }
        }
    }
    for a in 1..=a_max {
        for b in 1..=a as i64 {
            let c = out.coeffs[coeff_index(a, b)];
            out.coeffs[coeff_index(a, -b)] = if b % 2 == 0 { c.conj() } else { -c.conj() };
        }
        let c0 = &mut out.coeffs[coeff_index(a, 0)];
        c0.im = 0.0;
    }
    enforce_selection_rules(&mut out, shape.symmetry());
    let mut tail = 0.0f64;
    for (i, row) in radii.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            tail = tail.max((r - out.reconstruct(grid.theta[i], grid.phi[j])).abs());
        }
    }
    out.tail_norm = tail;
    Ok(out)
}

fn enforce_selection_rules(e: &mut HarmonicExpansion, sym: Symmetry) {
    let keep = |a: usize, b: i64| match sym {
        Symmetry::Spherical => false,
        Symmetry::Axisymmetric { mirror } => b == 0 && (!mirror || a % 2 == 0),
        Symmetry::Cubic => a % 2 == 0 && a >= 4 && b % 4 == 0,
        Symmetry::General => true,
    };
    for a in 1..=e.a_max {
        for b in -(a as i64)..=a as i64 {
            let c = &mut e.coeffs[coeff_index(a, b)];
            if !keep(a, b) {
                *c = Complex64::new(0.0, 0.0);
            } else if sym == Symmetry::Cubic {
                c.im = 0.0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_expands_to_nothing() {
        let g = QuadratureGrid::new(20, 40).unwrap();
        let e = expand(&BoundaryShape::sphere(2.5), 8, &g).unwrap();
        assert_eq!(e.r0, 2.5);
        assert!(e.coeffs.iter().all(|c| c.norm() < 1e-13));
    }

    #[test]
    fn mean_radius_values() {
        let g = QuadratureGrid::default();
        assert!((mean_radius(&BoundaryShape::sphere(2.5), &g) - 2.5).abs() < 1e-15);
        let s = BoundaryShape::Spheroid { ra: 1.0, rc: 0.75 };
        // reference values from adaptive quadrature of the closed form
        assert!((mean_radius(&s, &g) - 0.9018596622037034).abs() < 1e-13);
        assert!((oblate_mean_radius(1.0, 0.75).unwrap() - 0.9018596622037034).abs() < 1e-13);
        assert!(oblate_mean_radius(1.0, 1.2).is_none());
        let egg = BoundaryShape::Superegg { a: 1.0, c: 1.0, n: 2.0 };
        assert!((mean_radius(&egg, &g) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn volume_normalisation() {
        let s = volume_normalized_spheroid(0.75).unwrap();
        match s {
            BoundaryShape::Spheroid { ra, rc } => {
                assert!((ra - 1.100642).abs() < 1e-6 && (rc - 0.825482).abs() < 1e-6);
            }
            _ => panic!("expected spheroid"),
        }
        match volume_normalized_spheroid(1.25).unwrap() {
            BoundaryShape::Spheroid { ra, rc } => {
                assert!((ra - 0.928318).abs() < 1e-6 && (rc - 1.160397).abs() < 1e-6);
            }
            _ => panic!("expected spheroid"),
        }
        assert!(matches!(volume_normalized_spheroid(1.0).unwrap(), BoundaryShape::Sphere { .. }));
        assert!(volume_normalized_spheroid(-1.0).is_err());
    }

    #[test]
    fn slightly_prolate_spheroid() {
        let g = QuadratureGrid::default();
        let e = expand(&BoundaryShape::Spheroid { ra: 1.0, rc: 1.01 }, 12, &g).unwrap();
        assert!((e.r0 - 1.0033134563544517).abs() < 1e-13);
        assert!((e.get(2, 0).re - 0.010511322494021013).abs() < 1e-13);
        // first-order estimate (2δ/3) sqrt(4π/5) with δ = 0.01
        assert!((e.get(2, 0).re - 0.010569).abs() < 1e-4);
        for (a, b, c) in e.nonzero(1e-13) {
            assert!(b == 0 && a % 2 == 0, "unexpected C_{a}^{b} = {c}");
        }
    }

    #[test]
    fn superquadric_selection_rule() {
        let g = QuadratureGrid::default();
        let e = expand(&BoundaryShape::Superquadric { t: 1.5 }, 16, &g).unwrap();
        assert!(e.get(4, 0).norm() > 1e-3 && e.get(4, 4).norm() > 1e-3);
        for (a, b, _) in e.nonzero(0.0) {
            assert!(a % 2 == 0 && a >= 4 && b % 4 == 0, "C_{a}^{b}");
        }
    }

    #[test]
    fn grid_precondition() {
        let g = QuadratureGrid::new(8, 64).unwrap();
        assert!(matches!(
            expand(&BoundaryShape::sphere(1.0), 10, &g),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn set_real_keeps_reality() {
        let mut e = HarmonicExpansion::sphere(1.0, 3);
        e.set_real(3, -1, Complex64::new(0.2, 0.1)).unwrap();
        assert_eq!(e.get(3, 1), -e.get(3, -1).conj());
        assert!(e.set_real(4, 0, Complex64::new(1.0, 0.0)).is_err());
        let jet = e.reconstruct_jet(0.8, 1.3);
        assert!((jet.r - e.reconstruct(0.8, 1.3)).abs() < 1e-15);
    }

    #[test]
    fn random_shapes_are_reproducible() {
        let a = HarmonicExpansion::random(7, 1.0, 6, 0.05, false);
        let b = HarmonicExpansion::random(7, 1.0, 6, 0.05, false);
        assert_eq!(a, b);
        let norm: f64 = a.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 0.05).abs() < 1e-15);
        assert!(HarmonicExpansion::random(3, 1.0, 6, 0.05, true).is_axisymmetric(0.0));
    }
}
