use std::f64::consts::{PI, TAU};

use helmholtz3d::geometry::QuadratureGrid;
use helmholtz3d::specfun::{
    bessel_zero, cg, clebsch_gordan, product_expand, sph_harm, sph_harm_theta_deriv, spherical_bessel, ylm,
    AngularIndex, ZeroKind,
};
use num_complex::Complex64;
use proptest::prelude::*;

/// Racah's formula in plain floating point, as an independent check.
fn cg_float(j1: i64, j2: i64, m1: i64, m2: i64, j: i64, m: i64) -> f64 {
    if m != m1 + m2 || j < (j1 - j2).abs() || j > j1 + j2 || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
        return 0.0;
    }
    let lf = |n: i64| (1..=n).map(|k| (k as f64).ln()).sum::<f64>();
    let pre = 0.5
        * ((2 * j + 1) as f64).ln()
        + 0.5 * (lf(j1 + j2 - j) + lf(j1 - j2 + j) + lf(-j1 + j2 + j) - lf(j1 + j2 + j + 1))
        + 0.5 * (lf(j1 + m1) + lf(j1 - m1) + lf(j2 + m2) + lf(j2 - m2) + lf(j + m) + lf(j - m));
    let mut s = 0.0;
    for k in 0..=(j1 + j2 - j) {
        let d = [k, j1 + j2 - j - k, j1 - m1 - k, j2 + m2 - k, j - j2 + m1 + k, j - j1 - m2 + k];
        if d.iter().any(|&x| x < 0) {
            continue;
        }
        let t = (pre - d.iter().map(|&x| lf(x)).sum::<f64>()).exp();
        s += if k % 2 == 0 { t } else { -t };
    }
    s
}

#[test]
fn cg_examples() {
    assert!((cg(1, 1, 1, -1, 2, 0) - 1.0 / 6f64.sqrt()).abs() < 1e-15);
    assert!((cg(2, 1, 0, 0, 1, 0) + (0.4f64).sqrt()).abs() < 1e-15);
    for j in 0..8 {
        for m in -j..=j {
            assert!((cg(j, 0, m, 0, j, m) - 1.0).abs() < 1e-15);
        }
    }
    assert!(clebsch_gordan(-1, 1, 0, 0, 1, 0).is_err());
    assert_eq!(cg(1, 1, 1, 1, 1, 1), cg(1, 1, 1, 1, 1, 1));
    assert_eq!(cg(1, 1, 1, 0, 3, 1), 0.0);
}

#[test]
fn cg_orthogonality() {
    let (j1, j2) = (4, 3);
    for m in -7..=7 {
        for j in (j1 - j2)..=(j1 + j2) {
            for jp in (j1 - j2)..=(j1 + j2) {
                let s: f64 = (-j1..=j1).map(|m1| cg(j1, j2, m1, m - m1, j, m) * cg(j1, j2, m1, m - m1, jp, m)).sum();
                let want = if j == jp && (m.abs() <= j) { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-13, "j={j} j'={jp} m={m}: {s}");
            }
        }
    }
}

#[test]
fn spherical_harmonic_examples() {
    assert!((ylm(0, 0, 0.4, 1.0).re - 0.5 / PI.sqrt()).abs() < 1e-15);
    assert!((ylm(1, 0, 0.0, 0.0).re - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
    let d = sph_harm_theta_deriv(AngularIndex { l: 1, m: 0 }, 0.5 * PI, 0.0).unwrap();
    assert!((d.re + (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
    assert!(sph_harm(AngularIndex { l: 1, m: 2 }, 0.1, 0.1).is_err());
    assert!(AngularIndex::new(2, 3).is_err());
}

#[test]
fn orthonormal_up_to_degree_20() {
    let grid = QuadratureGrid::new(32, 64).unwrap();
    let mut idx = Vec::new();
    for l in 0..=20usize {
        for m in -(l as i64)..=l as i64 {
            idx.push((l, m));
        }
    }
    // table of Y values times sqrt of the quadrature weight
    let mut rows: Vec<Vec<Complex64>> = vec![Vec::new(); idx.len()];
    for (it, &t) in grid.theta.iter().enumerate() {
        let w = (grid.theta_weights[it] * grid.phi_weight).sqrt();
        for &p in &grid.phi {
            for (r, &(l, m)) in rows.iter_mut().zip(&idx) {
                r.push(ylm(l, m, t, p) * w);
            }
        }
    }
    let mut worst: f64 = 0.0;
    for a in 0..idx.len() {
        for b in a..idx.len() {
            let s: Complex64 = rows[a].iter().zip(&rows[b]).map(|(x, y)| x.conj() * y).sum();
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((s - want).norm());
        }
    }
    assert!(worst < 1e-12, "worst Gram error {worst}");
}

#[test]
fn bessel_zero_interlacing() {
    for n in 1..=10 {
        for l in 0..=10 {
            let b = bessel_zero(ZeroKind::Node, n, l).unwrap();
            let up = bessel_zero(ZeroKind::Node, n, l + 1).unwrap();
            let next = bessel_zero(ZeroKind::Node, n + 1, l).unwrap();
            assert!(b < up && up < next, "n={n} l={l}");
        }
    }
}

fn sph_pointwise(l: i64, m: i64, t: f64, p: f64) -> Complex64 {
    ylm(l as usize, m, t, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cg_exact_matches_float_racah(j1 in 0i64..=12, j2 in 0i64..=12, m1 in -12i64..=12, m2 in -12i64..=12, j in 0i64..=24) {
        let exact = cg(j1, j2, m1, m2, j, m1 + m2);
        let float = cg_float(j1, j2, m1, m2, j, m1 + m2);
        prop_assert!((exact - float).abs() < 1e-12, "{exact} vs {float}");
    }

    #[test]
    fn bessel_ode_residual(l in 0i64..=30, x in 1e-3f64..50.0) {
        let j = spherical_bessel(l, x, 0).unwrap();
        let d1 = spherical_bessel(l, x, 1).unwrap();
        let d2 = spherical_bessel(l, x, 2).unwrap();
        let ll = (l * (l + 1)) as f64;
        let res = x * x * d2 + 2.0 * x * d1 + (x * x - ll) * j;
        let scale = (x * x * d2).abs() + (2.0 * x * d1).abs() + ((x * x + ll) * j).abs();
        prop_assert!(res.abs() <= 1e-9 * scale.max(1e-300), "l={l} x={x} res={res} scale={scale}");
    }

    #[test]
    fn identity_i_pointwise(l1 in 0i64..=6, l2 in 0i64..=6, m1 in -6i64..=6, m2 in -6i64..=6, t in 0.0f64..PI, p in 0.0f64..TAU) {
        prop_assume!(m1.abs() <= l1 && m2.abs() <= l2);
        let terms = product_expand(&[AngularIndex::new(l1, m1).unwrap(), AngularIndex::new(l2, m2).unwrap()]).unwrap();
        let sum: Complex64 = terms.iter().map(|(i, w)| sph_pointwise(i.l as i64, i.m as i64, t, p) * *w).sum();
        let direct = sph_pointwise(l1, m1, t, p) * sph_pointwise(l2, m2, t, p);
        prop_assert!((sum - direct).norm() < 1e-12);
    }

    #[test]
    fn identity_ii_pointwise(l in prop::array::uniform3(0i64..=4), m in prop::array::uniform3(-4i64..=4), t in 0.0f64..PI, p in 0.0f64..TAU) {
        prop_assume!((0..3).all(|i| m[i].abs() <= l[i]));
        let idx: Vec<AngularIndex> = (0..3).map(|i| AngularIndex::new(l[i], m[i]).unwrap()).collect();
        let terms = product_expand(&idx).unwrap();
        let sum: Complex64 = terms.iter().map(|(i, w)| sph_pointwise(i.l as i64, i.m as i64, t, p) * *w).sum();
        let direct: Complex64 = (0..3).map(|i| sph_pointwise(l[i], m[i], t, p)).product();
        prop_assert!((sum - direct).norm() < 1e-12);
    }

    #[test]
    fn identity_iii_matches_finite_difference(l in 0u32..=12, m in -12i32..=12, t in 0.05f64..3.09, p in 0.0f64..TAU) {
        prop_assume!(m.unsigned_abs() <= l);
        let idx = AngularIndex { l, m };
        let h = 1e-6;
        let fd = (sph_harm(idx, t + h, p).unwrap() - sph_harm(idx, t - h, p).unwrap()) / (2.0 * h);
        let an = sph_harm_theta_deriv(idx, t, p).unwrap();
        prop_assert!((fd - an).norm() < 1e-8);
    }

    #[test]
    fn conjugation_relation(l in 0u32..=12, m in 0i32..=12, t in 0.0f64..PI, p in 0.0f64..TAU) {
        prop_assume!(m as u32 <= l);
        let a = sph_harm(AngularIndex { l, m: -m }, t, p).unwrap();
        let b = sph_harm(AngularIndex { l, m }, t, p).unwrap().conj() * if m % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn identity_iv(a in 0i64..=12, b in -12i64..=12) {
        prop_assume!(b.abs() <= a);
        let lhs = cg(a, a, 0, 0, 0, 0) * cg(a, a, b, -b, 0, 0);
        let rhs = if b % 2 == 0 { 1.0 } else { -1.0 } / (2 * a + 1) as f64;
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn identity_v(a in 1i64..=12, l in 0i64..=12, p in 0i64..=12, m in -12i64..=12) {
        prop_assume!(m.abs() <= l && m.abs() <= p);
        let lhs = (((l + m) * (l - m + 1)) as f64).sqrt() * cg(a, l, 1, m - 1, p, m)
            + (((l - m) * (l + m + 1)) as f64).sqrt() * cg(a, l, -1, m + 1, p, m);
        let aa = (a * (a + 1)) as f64;
        let rhs = -(aa + ((l - p) * (l + p + 1)) as f64) / aa.sqrt() * cg(a, l, 0, m, p, m);
        prop_assert!((lhs - rhs).abs() < 1e-12, "V(a): {lhs} vs {rhs}");
        // V(b) is the p = l case
        let lhs_b = (((l + m) * (l - m + 1)) as f64).sqrt() * cg(a, l, 1, m - 1, l, m)
            + (((l - m) * (l + m + 1)) as f64).sqrt() * cg(a, l, -1, m + 1, l, m);
        prop_assert!((lhs_b + aa.sqrt() * cg(a, l, 0, m, l, m)).abs() < 1e-12, "V(b)");
    }

    #[test]
    fn identity_vi(a in 1i64..=12, b in 1i64..=12, k in 1i64..=24) {
        let lhs = ((b * (b + 1)) as f64).sqrt() * cg(a, b, 0, -1, k, -1) + ((a * (a + 1)) as f64).sqrt() * cg(a, b, -1, 0, k, -1);
        let rhs = ((k * (k + 1)) as f64).sqrt() * cg(a, b, 0, 0, k, 0);
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }
}
