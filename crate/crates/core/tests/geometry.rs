use std::f64::consts::PI;

use helmholtz3d::geometry::{
    centroid, expand, mean_radius, oblate_mean_radius, volume, volume_normalized_spheroid, BoundaryShape,
    HarmonicExpansion, QuadratureGrid, TabulatedGrid,
};
use proptest::prelude::*;

#[test]
fn superegg_keeps_mirror_symmetric_rows() {
    let s = BoundaryShape::Superegg { a: 1.0, c: 1.1, n: 2.5 };
    let e = expand(&s, 12, &QuadratureGrid::for_degree(12)).unwrap();
    for (a, b, _) in e.nonzero(1e-14) {
        assert!(b == 0 && a % 2 == 0, "unexpected C_{a}^{b}");
    }
    assert!(e.get(2, 0).norm() > 1e-3);
}

#[test]
fn unit_superquadric_t2_is_the_unit_sphere() {
    let s = BoundaryShape::Superquadric { t: 2.0 };
    for &(t, p) in &[(0.3, 0.1), (1.5, 2.0), (2.9, 4.0)] {
        assert!((s.radius(t, p) - 1.0).abs() < 1e-14);
    }
    let e = expand(&s, 8, &QuadratureGrid::default()).unwrap();
    assert!((e.r0 - 1.0).abs() < 1e-14 && e.nonzero(1e-13).count() == 0);
}

#[test]
fn tabulated_shape_matches_its_source() {
    let src = volume_normalized_spheroid(1.1).unwrap();
    let grid = TabulatedGrid::sample(&src, 91, 96).unwrap();
    let tab = BoundaryShape::Tabulated(grid);
    tab.validate().unwrap();
    let q = QuadratureGrid::default();
    assert!((mean_radius(&tab, &q) - mean_radius(&src, &q)).abs() < 1e-6);
    let a = expand(&src, 6, &q).unwrap();
    let b = expand(&tab, 6, &q).unwrap();
    assert!((a.get(2, 0) - b.get(2, 0)).norm() < 1e-6);
}

#[test]
fn centroid_of_shifted_sphere() {
    // a small C_1^0 translates the sphere along z by about c sqrt(3/4π)
    let c = 1e-3;
    let e = HarmonicExpansion::axisymmetric(1.0, &[0.0, c]);
    let z = centroid(&BoundaryShape::Harmonic(e), &QuadratureGrid::default())[2];
    assert!((z - c * (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn spheroid_expansion_round_trip(ra in 0.8f64..1.2, ratio in 0.75f64..=1.25, t in 0.0f64..PI, p in 0.0f64..std::f64::consts::TAU) {
        // the 1e-10 round trip holds over this aspect-ratio window only
        let s = BoundaryShape::Spheroid { ra, rc: ra * ratio };
        let e = expand(&s, 24, &QuadratureGrid::default()).unwrap();
        prop_assert!(e.tail_norm < 1e-10);
        prop_assert!((e.reconstruct(t, p) - s.radius(t, p)).abs() < 1e-10);
    }

    #[test]
    fn spheroid_coefficients_decay(ratio in 0.75f64..1.25) {
        let e = expand(&volume_normalized_spheroid(ratio).unwrap(), 16, &QuadratureGrid::default()).unwrap();
        for a in (4..=16).step_by(2) {
            prop_assert!(e.get(a, 0).norm() <= e.get(a - 2, 0).norm() + 1e-15);
        }
    }

    #[test]
    fn volume_normalised_spheroids_have_unit_volume(ratio in 0.75f64..1.25) {
        let s = volume_normalized_spheroid(ratio).unwrap();
        let v = volume(&s, &QuadratureGrid::default());
        prop_assert!((v - 4.0 * PI / 3.0).abs() < 1e-10);
    }

    #[test]
    fn oblate_closed_form_matches_quadrature(rc in 0.5f64..0.99) {
        let r0 = oblate_mean_radius(1.0, rc).unwrap();
        let q = mean_radius(&BoundaryShape::Spheroid { ra: 1.0, rc }, &QuadratureGrid::new(128, 8).unwrap());
        prop_assert!((r0 - q).abs() < 1e-10);
    }

    #[test]
    fn mean_radius_is_the_zeroth_coefficient(seed in 0u64..500, a_max in 1usize..=6) {
        let h = HarmonicExpansion::random(seed, 1.0, a_max, 0.05, false);
        let shape = BoundaryShape::Harmonic(h.clone());
        let e = expand(&shape, a_max, &QuadratureGrid::for_degree(a_max)).unwrap();
        prop_assert!((e.r0 - 1.0).abs() < 1e-12);
        for (a, b, c) in h.nonzero(0.0) {
            prop_assert!((e.get(a, b) - c).norm() < 1e-12);
        }
    }
}
