//! `l >= 1` states under an axisymmetric deformation `f = Σ_a C_a Y_a^0`.
//! The multiplet splits by `|m|`; each `m` is corrected independently.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::wave::WaveCoefficients;
use super::{check_denominator, BoundaryCondition, CorrectionResult, UnperturbedMode, COEFF_TOL};
use crate::error::{Error, Result};
use crate::geometry::HarmonicExpansion;
use crate::specfun::{cg, product_coefficient, sph_jn_derivs, AngularIndex};

fn axial(mode: &UnperturbedMode, exp: &HarmonicExpansion) -> Result<Vec<f64>> {
    if mode.spec.l == 0 {
        return Err(Error::Domain("degenerate formulas need l >= 1".into()));
    }
    if !exp.is_axisymmetric(COEFF_TOL) {
        return Err(Error::Unsupported(
            "degenerate corrections need an axisymmetric deformation (C_a^b = 0 for b != 0)".into(),
        ));
    }
    Ok((0..=exp.a_max).map(|a| if a == 0 { 0.0 } else { exp.get(a, 0).re }).collect())
}

/// `Σ_{k=1}^{l} sqrt((4k+1)/π) C_{2k} ⟨2k l 0 0|l 0⟩⟨2k l 0 m|l m⟩ w_k`.
fn diagonal_sum<F: Fn(i64) -> f64>(c: &[f64], l: i64, m: i64, weight: F) -> f64 {
    (1..=l)
        .filter(|k| ((2 * k) as usize) < c.len())
        .map(|k| {
            let a = 2 * k;
            ((4 * k + 1) as f64 / PI).sqrt() * c[a as usize] * cg(a, l, 0, 0, l, 0) * cg(a, l, 0, m, l, m) * weight(k)
        })
        .sum()
}

fn e1_ratio(mode: &UnperturbedMode, c: &[f64]) -> f64 {
    let (l, m) = (mode.spec.l as i64, mode.spec.m as i64);
    match mode.spec.bc {
        BoundaryCondition::Dirichlet => -diagonal_sum(c, l, m, |_| 1.0),
        BoundaryCondition::Neumann => {
            let gap = mode.rho0 * mode.rho0 - (l * (l + 1)) as f64;
            -diagonal_sum(c, l, m, |k| 1.0 + (k * (2 * k + 1)) as f64 / gap)
        }
    }
}

/// First order correction `E1` of a degenerate mode.
pub fn e1_deg(mode: &UnperturbedMode, exp: &HarmonicExpansion) -> Result<f64> {
    let c = axial(mode, exp)?;
    Ok(mode.e0 * e1_ratio(mode, &c))
}

/// `E1` and `E2` of a degenerate mode.
pub fn e2_deg(mode: &UnperturbedMode, exp: &HarmonicExpansion) -> Result<CorrectionResult> {
    let c = axial(mode, exp)?;
    let a_max = c.len() - 1;
    let (l, m) = (mode.spec.l as i64, mode.spec.m as i64);
    let ll = (l * (l + 1)) as f64;
    let rho = mode.rho0;
    let gap = rho * rho - ll;
    let bc = mode.spec.bc;
    let e1 = e1_ratio(mode, &c);

    // Σ_{a,b} Σ_k sqrt((2a+1)(2b+1))/(2π) C_a C_b ⟨a b 0 0|k 0⟩² ⟨k l 0 0|l 0⟩⟨k l 0 m|l m⟩ w_k
    let mut pair_sum = 0.0;
    for a in 1..=a_max as i64 {
        if c[a as usize] == 0.0 {
            continue;
        }
        for b in 1..=a_max as i64 {
            if c[b as usize] == 0.0 {
                continue;
            }
            let lead = (((2 * a + 1) * (2 * b + 1)) as f64).sqrt() / (2.0 * PI) * c[a as usize] * c[b as usize];
            for k in (a - b).abs()..=(a + b).min(2 * l) {
                let g = cg(a, b, 0, 0, k, 0);
                if g == 0.0 {
                    continue;
                }
                let w = match bc {
                    BoundaryCondition::Dirichlet => 1.0,
                    BoundaryCondition::Neumann => 1.0 + ((k * (k + 1)) as f64 - 2.0 * ll) / (2.0 * gap),
                };
                pair_sum += lead * g * g * cg(k, l, 0, 0, l, 0) * cg(k, l, 0, m, l, m) * w;
            }
        }
    }

    // Coupling through the other angular orders p != l; the n- and k-sums
    // factorise for each p.
    let mut cross = 0.0;
    let mut p_max = 0;
    for p in m.abs()..=l + a_max as i64 {
        if p == l {
            continue;
        }
        let pf = (p * (p + 1)) as f64;
        let (mut u, mut v) = (0.0, 0.0);
        for n in (l - p).abs().max(1)..=(l + p).min(a_max as i64) {
            let w = match bc {
                BoundaryCondition::Dirichlet => 1.0,
                BoundaryCondition::Neumann => 1.0 + ((n * (n + 1)) as f64 + ll - pf) / (2.0 * gap),
            };
            u += ((2 * n + 1) as f64).sqrt() * c[n as usize] * cg(n, l, 0, 0, p, 0) * cg(n, l, 0, m, p, m) * w;
        }
        if u == 0.0 {
            continue;
        }
        let d = sph_jn_derivs(p as usize, rho);
        let mut vk = Vec::new();
        for k in (l - p).abs().max(1)..=(l + p).min(a_max as i64) {
            let base = ((2 * k + 1) as f64).sqrt() * c[k as usize] * cg(k, p, 0, 0, l, 0) * cg(k, p, 0, m, l, m);
            vk.push((k, base));
        }
        if vk.iter().all(|(_, b)| *b == 0.0) {
            continue;
        }
        let g = check_denominator(bc, p as usize, rho)?;
        p_max = p_max.max(p as usize);
        match bc {
            BoundaryCondition::Dirichlet => {
                v = vk.iter().map(|(_, b)| b).sum::<f64>();
                cross += rho * d[1] / g * u * v / (2.0 * PI);
            }
            BoundaryCondition::Neumann => {
                for (k, base) in vk {
                    let kk = (k * (k + 1)) as f64;
                    v += base * (1.0 + (2.0 * rho * rho + kk - pf - ll) / 4.0 * d[0] / (rho * g));
                }
                cross -= u * v / PI;
            }
        }
    }

    let e2 = match bc {
        BoundaryCondition::Dirichlet => 0.25 * e1 * e1 + pair_sum + cross,
        BoundaryCondition::Neumann => {
            let plain = diagonal_sum(&c, l, m, |_| 1.0);
            0.25 * (rho * rho - 3.0 * ll) / gap * e1 * e1 - ll / gap * e1 * plain + pair_sum + cross
        }
    };
    Ok(CorrectionResult::new(mode.spec, mode.e0, mode.e0 * e1, mode.e0 * e2, p_max.max(2 * l as usize)))
}

/// First order coefficients `A_p^m` (`p != l`) of a degenerate mode; every
/// `A_p^q` with `q != m` vanishes.
pub fn first_order_coeffs_deg(mode: &UnperturbedMode, exp: &HarmonicExpansion) -> Result<WaveCoefficients> {
    let c = axial(mode, exp)?;
    let a_max = c.len() - 1;
    let (l, m) = (mode.spec.l as i64, mode.spec.m as i64);
    let ll = (l * (l + 1)) as f64;
    let rho = mode.rho0;
    let bc = mode.spec.bc;
    let jd = sph_jn_derivs(l as usize, rho);
    let jl1 = sph_jn_derivs(l as usize + 1, rho)[0];
    let mut first = BTreeMap::new();
    for p in m.abs()..=l + a_max as i64 {
        if p == l {
            continue;
        }
        let pf = (p * (p + 1)) as f64;
        let mut s = 0.0;
        for k in (l - p).abs().max(1)..=(l + p).min(a_max as i64) {
            let g = product_coefficient(k, 0, l, m, p);
            let w = match bc {
                BoundaryCondition::Dirichlet => 1.0,
                BoundaryCondition::Neumann => rho * rho + ((k * (k + 1)) as f64 - ll - pf) / 2.0,
            };
            s += g * c[k as usize] * w;
        }
        if s == 0.0 {
            continue;
        }
        let den = check_denominator(bc, p as usize, rho)?;
        let a = match bc {
            BoundaryCondition::Dirichlet => rho * mode.norm * jl1 / den * s,
            BoundaryCondition::Neumann => mode.norm * jd[0] / (rho * den) * s,
        };
        first.insert(AngularIndex { l: p as u32, m: m as i32 }, Complex64::new(a, 0.0));
    }
    let mut w = WaveCoefficients::zeroth(mode);
    w.e1_over_e0 = e1_ratio(mode, &c);
    w.first_order = first;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturb::ModeSpec;

    fn mode(bc: BoundaryCondition, n: u32, l: u32, m: i32) -> UnperturbedMode {
        UnperturbedMode::new(ModeSpec::new(bc, n, l, m).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn first_order_reference_values() {
        let c2 = 0.01;
        let e = HarmonicExpansion::axisymmetric(1.0, &[0.0, 0.0, c2]);
        let d0 = mode(BoundaryCondition::Dirichlet, 1, 1, 0);
        let d1 = mode(BoundaryCondition::Dirichlet, 1, 1, 1);
        assert!((e1_deg(&d0, &e).unwrap() / d0.e0 + 0.504627 * c2).abs() < 1e-8);
        assert!((e1_deg(&d1, &e).unwrap() / d1.e0 - 0.252313 * c2).abs() < 1e-8);
        let n0 = mode(BoundaryCondition::Neumann, 1, 1, 0);
        assert!((e1_deg(&n0, &e).unwrap() / n0.e0 + 1.15352 * c2).abs() < 1e-6);
    }

    #[test]
    fn trace_of_first_order_vanishes() {
        let e = HarmonicExpansion::axisymmetric(1.0, &[0.0, 0.02, -0.03, 0.01, 0.015, -0.004, 0.002]);
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            for l in 1..=5u32 {
                let total: f64 = (-(l as i32)..=l as i32)
                    .map(|m| e1_deg(&mode(bc, 1, l, m), &e).unwrap())
                    .sum();
                assert!(total.abs() < 1e-12, "{bc:?} l={l}: {total}");
            }
        }
    }

    #[test]
    fn corrections_even_in_m() {
        let e = HarmonicExpansion::axisymmetric(1.0, &[0.0, 0.02, -0.03, 0.01, 0.015]);
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            for m in 1..=2 {
                let a = e2_deg(&mode(bc, 1, 2, m), &e).unwrap();
                let b = e2_deg(&mode(bc, 1, 2, -m), &e).unwrap();
                assert_eq!(a.e1, b.e1);
                assert!((a.e2 - b.e2).abs() <= 1e-14 * a.e2.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn a_coefficients_follow_selection_rules() {
        let e = HarmonicExpansion::axisymmetric(1.0, &[0.0, 0.0, 0.05]);
        let w = first_order_coeffs_deg(&mode(BoundaryCondition::Dirichlet, 1, 1, 0), &e).unwrap();
        let keys: Vec<_> = w.first_order.keys().copied().collect();
        assert_eq!(keys, vec![AngularIndex { l: 3, m: 0 }]);
    }

    #[test]
    fn refuses_non_axisymmetric() {
        let mut e = HarmonicExpansion::sphere(1.0, 3);
        e.set_real(2, 1, Complex64::new(0.01, 0.0)).unwrap();
        let r = e2_deg(&mode(BoundaryCondition::Dirichlet, 1, 1, 0), &e);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn sphere_is_fixed_point() {
        let e = HarmonicExpansion::sphere(1.0, 4);
        let r = e2_deg(&mode(BoundaryCondition::Neumann, 2, 3, -2), &e).unwrap();
        assert_eq!((r.e1, r.e2), (0.0, 0.0));
    }
}
