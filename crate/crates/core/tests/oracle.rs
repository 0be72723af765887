use std::f64::consts::PI;

use helmholtz3d::geometry::{volume_normalized_spheroid, BoundaryShape};
use helmholtz3d::oracle::{nearest_eigenvalue, sector_for, sigma_min, Collocation, CollocationConfig, Sector};
use helmholtz3d::perturb::BoundaryCondition;
use helmholtz3d::specfun::{bessel_zero, ZeroKind};

fn cfg(l: usize) -> CollocationConfig {
    CollocationConfig::default().with_l_max(l)
}

#[test]
fn sphere_sigma_vanishes_only_at_eigenvalues() {
    let s = BoundaryShape::sphere(1.0);
    let sec = Sector::Full;
    assert!(sigma_min(&s, BoundaryCondition::Dirichlet, sec, PI, &cfg(6)).unwrap() < 1e-8);
    assert!(sigma_min(&s, BoundaryCondition::Dirichlet, sec, 2.0, &cfg(6)).unwrap() > 1e-2);
    let a11 = bessel_zero(ZeroKind::DerivNode, 1, 1).unwrap();
    assert!(sigma_min(&s, BoundaryCondition::Neumann, sec, a11, &cfg(6)).unwrap() < 1e-8);
}

#[test]
fn sphere_error_shrinks_with_degree() {
    let s = BoundaryShape::sphere(1.0);
    let want = bessel_zero(ZeroKind::Node, 1, 2).unwrap();
    let sec = Sector::Azimuthal { m: 1, parity: Some(1) };
    let mut last = f64::INFINITY;
    for l in [4, 8, 12] {
        let e = nearest_eigenvalue(&s, BoundaryCondition::Dirichlet, sec, want - 0.1, 0.3, &cfg(l)).unwrap();
        let err = (e.k - want).abs();
        assert!(err <= last.max(1e-10));
        last = err;
    }
    assert!(last < 1e-10);
}

#[test]
fn azimuthal_and_full_solves_agree() {
    let shape = volume_normalized_spheroid(1.05).unwrap();
    for (bc, l, m, guess) in [
        (BoundaryCondition::Dirichlet, 0, 0, PI),
        (BoundaryCondition::Dirichlet, 1, 1, 4.49),
        (BoundaryCondition::Neumann, 1, 0, 2.08),
    ] {
        let a = nearest_eigenvalue(&shape, bc, sector_for(&shape, l, m), guess, 0.15, &cfg(30)).unwrap();
        let b = nearest_eigenvalue(&shape, bc, Sector::Full, a.k, 0.02, &cfg(14)).unwrap();
        assert!((a.energy - b.energy).abs() < 1e-8 * a.energy, "{bc:?} l={l} m={m}: {} vs {}", a.energy, b.energy);
    }
}

#[test]
fn cube_sector_agrees_with_full_solve() {
    let shape = BoundaryShape::Superquadric { t: 4.0 };
    let a = nearest_eigenvalue(&shape, BoundaryCondition::Dirichlet, Sector::Cubic, 2.8, 0.3, &cfg(24)).unwrap();
    let b = nearest_eigenvalue(&shape, BoundaryCondition::Dirichlet, Sector::Full, a.k, 0.02, &cfg(14)).unwrap();
    assert!((a.energy - b.energy).abs() < 1e-5 * a.energy, "{} vs {}", a.energy, b.energy);
}

#[test]
fn tabulated_shape_reproduces_analytic_eigenvalue() {
    let shape = volume_normalized_spheroid(0.9).unwrap();
    let tab = BoundaryShape::Tabulated(helmholtz3d::geometry::TabulatedGrid::sample(&shape, 181, 64).unwrap());
    let a = nearest_eigenvalue(&shape, BoundaryCondition::Dirichlet, Sector::Full, PI, 0.1, &cfg(10)).unwrap();
    let b = nearest_eigenvalue(&tab, BoundaryCondition::Dirichlet, Sector::Full, PI, 0.1, &cfg(10)).unwrap();
    assert!((a.energy - b.energy).abs() < 1e-5 * a.energy, "{} vs {}", a.energy, b.energy);
}

#[test]
fn collocation_reports_its_size() {
    let c = Collocation::new(&BoundaryShape::sphere(1.0), BoundaryCondition::Dirichlet, Sector::Full, &cfg(4)).unwrap();
    assert_eq!(c.n_basis(), 25);
    assert!(c.n_boundary() >= 75);
    assert!(c.sigma(-1.0).is_err());
}
