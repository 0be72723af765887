//! `l = 0` states: `E1 = 0`, `E2` and the wavefunction coefficients for an
//! arbitrary (not necessarily axisymmetric) deformation.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::wave::WaveCoefficients;
use super::{check_denominator, BoundaryCondition, CorrectionResult, UnperturbedMode, COEFF_TOL};
use crate::error::{Error, Result};
use crate::geometry::HarmonicExpansion;
use crate::specfun::{product_coefficient, sph_jn_derivs, AngularIndex};

fn require_l0(mode: &UnperturbedMode) -> Result<()> {
    if mode.spec.l != 0 {
        return Err(Error::Domain(format!(
            "non-degenerate formulas need l = 0, got l = {}",
            mode.spec.l
        )));
    }
    Ok(())
}

/// `1 + ρ j_p'/j_p` (Dirichlet) or `1 + ρ j_p/j_p'` (Neumann) at `ρ0`.
fn bracket(bc: BoundaryCondition, p: usize, rho: f64) -> Result<f64> {
    let g = check_denominator(bc, p, rho)?;
    let d = sph_jn_derivs(p, rho);
    Ok(match bc {
        BoundaryCondition::Dirichlet => 1.0 + rho * d[1] / g,
        BoundaryCondition::Neumann => 1.0 + rho * d[0] / g,
    })
}

/// `E1 = 0` and `E2` for an `l = 0` mode.
///
/// `E2/E0 = ± (1/2π) Σ_{p,q} (-1)^q C_p^q C_p^{-q} (1 + ρ0 X_p)` with
/// `X_p = j_p'/j_p` and sign `+` for Dirichlet, `X_p = j_p/j_p'` and sign `-`
/// for Neumann. Both signs make a rigid translation of the sphere (pure
/// `C_1^b`, at second order) leave the energy unchanged up to the shift of the
/// mean radius.
pub fn e2_nondeg(mode: &UnperturbedMode, exp: &HarmonicExpansion) -> Result<CorrectionResult> {
    require_l0(mode)?;
    let bc = mode.spec.bc;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut p_max = 0;
    for p in 1..=exp.a_max {
        let mut s = Complex64::new(0.0, 0.0);
        for q in -(p as i64)..=p as i64 {
            let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * exp.get(p, q) * exp.get(p, -q);
        }
        if s.norm() <= COEFF_TOL * COEFF_TOL {
            continue;
        }
        p_max = p;
        sum += s * bracket(bc, p, mode.rho0)?;
    }
    let sign = match bc {
        BoundaryCondition::Dirichlet => 1.0,
        BoundaryCondition::Neumann => -1.0,
    };
    let e2 = mode.e0 * sign * sum.re / (2.0 * PI);
    Ok(CorrectionResult::new(mode.spec, mode.e0, 0.0, e2, p_max))
}

/// `A_p^q = ρ0 N C_p^q j_1(ρ0)/j_p(ρ0)` (Dirichlet) or
/// `ρ0 N C_p^q j_0(ρ0)/j_p'(ρ0)` (Neumann), with `N = norm · Y_0^0`.
pub fn first_order_coeffs_nondeg(mode: &UnperturbedMode, exp: &HarmonicExpansion) -> Result<WaveCoefficients> {
    require_l0(mode)?;
    let bc = mode.spec.bc;
    let rho = mode.rho0;
    let n00 = mode.norm / (4.0 * PI).sqrt();
    let top = match bc {
        BoundaryCondition::Dirichlet => sph_jn_derivs(1, rho)[0],
        BoundaryCondition::Neumann => sph_jn_derivs(0, rho)[0],
    };
    let mut first = BTreeMap::new();
    for (p, q, c) in exp.nonzero(COEFF_TOL) {
        let g = check_denominator(bc, p, rho)?;
        first.insert(AngularIndex { l: p as u32, m: q as i32 }, c * (rho * n00 * top / g));
    }
    let mut w = WaveCoefficients::zeroth(mode);
    w.first_order = first;
    Ok(w)
}

/// First and second order coefficients for an `l = 0` mode, with `E2` filled
/// in for the particular solution of the second order equation.
///
/// `B_p^q = ∓ (N ρ0 g_0 / g_p) Σ_{a,b,k} G(a,b;k,q-b|p) C_a^b C_k^{q-b} W`
/// where `G` is the harmonic product coefficient, `g_p = j_p` or `j_p'`,
/// and the weight `W` is `1 + ρ0 j_a'/j_a` (Dirichlet) or
/// `1 + ρ0 j_a/j_a' + (k(k+1) - a(a+1) - p(p+1)) j_a / (2 ρ0 j_a')`
/// (Neumann).
pub fn second_order_coeffs_nondeg(mode: &UnperturbedMode, exp: &HarmonicExpansion) -> Result<WaveCoefficients> {
    let mut w = first_order_coeffs_nondeg(mode, exp)?;
    let e = e2_nondeg(mode, exp)?;
    w.e2_over_e0 = e.e2 / e.e0;
    let bc = mode.spec.bc;
    let rho = mode.rho0;
    let n00 = mode.norm / (4.0 * PI).sqrt();
    let terms: Vec<(usize, i64, Complex64)> = exp.nonzero(COEFF_TOL).collect();
    let a_max = terms.iter().map(|t| t.0).max().unwrap_or(0);
    // j_a and the denominators at ρ0 for every a that occurs
    let mut ratio = vec![0.0; a_max + 1];
    for &(a, _, _) in &terms {
        let d = sph_jn_derivs(a, rho);
        let g = check_denominator(bc, a, rho)?;
        ratio[a] = match bc {
            BoundaryCondition::Dirichlet => d[1] / g,
            BoundaryCondition::Neumann => d[0] / g,
        };
    }
    let (top, sign) = match bc {
        BoundaryCondition::Dirichlet => (sph_jn_derivs(1, rho)[0], -1.0),
        BoundaryCondition::Neumann => (sph_jn_derivs(0, rho)[0], 1.0),
    };
    let mut second = BTreeMap::new();
    for p in 1..=2 * a_max {
        for q in -(p as i64)..=p as i64 {
            let mut s = Complex64::new(0.0, 0.0);
            for &(a, b, ca) in &terms {
                let qb = q - b;
                let k_lo = (a as i64 - p as i64).unsigned_abs().max(qb.unsigned_abs()).max(1) as usize;
                let k_hi = (a + p).min(a_max);
                for k in k_lo..=k_hi {
                    let ck = exp.get(k, qb);
                    if ck.norm() <= COEFF_TOL {
                        continue;
                    }
                    let g = product_coefficient(a as i64, b, k as i64, qb, p as i64);
                    if g == 0.0 {
                        continue;
                    }
                    let weight = match bc {
                        BoundaryCondition::Dirichlet => 1.0 + rho * ratio[a],
                        BoundaryCondition::Neumann => {
                            let kk = (k * (k + 1)) as f64 - (a * (a + 1)) as f64 - (p * (p + 1)) as f64;
                            1.0 + rho * ratio[a] + kk / (2.0 * rho) * ratio[a]
                        }
                    };
                    s += ca * ck * (g * weight);
                }
            }
            if s.norm() == 0.0 {
                continue;
            }
            let gp = check_denominator(bc, p, rho)?;
            second.insert(AngularIndex { l: p as u32, m: q as i32 }, s * (sign * n00 * rho * top / gp));
        }
    }
    w.second_order = second;
    Ok(w)
}
