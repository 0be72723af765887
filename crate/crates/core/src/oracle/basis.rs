//! Real spherical-wave bases and their angular parts at collocation points.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::specfun::LegendreTable;

/// Block of the spectrum solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sector {
    /// No symmetry assumed: every real harmonic up to `l_max`.
    Full,
    /// Axisymmetric shapes: a single `|m|`, optionally a single parity
    /// `(l - m) mod 2` under `z -> -z`.
    Azimuthal { m: u32, parity: Option<u32> },
    /// Superquadric states invariant under the full cube group.
    Cubic,
}

/// Real harmonic `S_l^m`: `cos mφ` type for `m >= 0`, `sin |m|φ` for `m < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct RealHarmonic {
    pub l: usize,
    pub m: i64,
}

impl Sector {
    pub(crate) fn basis(&self, l_max: usize) -> Vec<RealHarmonic> {
        let mut out = Vec::new();
        match *self {
            Sector::Full => {
                for l in 0..=l_max {
                    for m in -(l as i64)..=l as i64 {
                        out.push(RealHarmonic { l, m });
                    }
                }
            }
            Sector::Azimuthal { m, parity } => {
                let m = m as usize;
                for l in m..=l_max {
                    if parity.is_none_or(|p| (l - m) % 2 == p as usize) {
                        out.push(RealHarmonic { l, m: m as i64 });
                    }
                }
            }
            Sector::Cubic => {
                for l in (0..=l_max).step_by(2) {
                    for m in (0..=l).step_by(4) {
                        out.push(RealHarmonic { l, m: m as i64 });
                    }
                }
            }
        }
        out
    }

    /// Whether the direction `(θ, φ)` lies in the part of the sphere that
    /// collocation is restricted to.
    pub(crate) fn contains(&self, theta: f64, phi: f64) -> bool {
        match *self {
            Sector::Full => true,
            Sector::Azimuthal { parity, .. } => phi == 0.0 && (parity.is_none() || theta < 0.5 * PI),
            Sector::Cubic => {
                let (s, c) = theta.sin_cos();
                theta < 0.5 * PI && (0.0..FRAC_PI_4).contains(&phi) && c >= s * phi.cos()
            }
        }
    }
}

/// Angular data of every basis column at one point. With `x` the point
/// relative to the expansion centre and `n` the outward normal (boundary
/// points only), a column evaluates to `j_l(k|x|) value` and its normal
/// derivative to `k j_l'(k|x|) radial + j_l(k|x|) tangential`.
#[derive(Debug, Clone)]
pub(crate) struct PointData {
    pub r: f64,
    pub value: Vec<f64>,
    pub radial: Vec<f64>,
    pub tangential: Vec<f64>,
}

pub(crate) fn point_data(sector: &Sector, basis: &[RealHarmonic], x: [f64; 3], n: Option<[f64; 3]>) -> PointData {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let mut out = PointData {
        r,
        value: vec![0.0; basis.len()],
        radial: vec![0.0; basis.len()],
        tangential: vec![0.0; basis.len()],
    };
    let images: &[[usize; 3]] = match sector {
        Sector::Cubic => &[[0, 1, 2], [1, 2, 0], [2, 0, 1]],
        _ => &[[0, 1, 2]],
    };
    for perm in images {
        let px = [x[perm[0]], x[perm[1]], x[perm[2]]];
        let pn = n.map(|n| [n[perm[0]], n[perm[1]], n[perm[2]]]);
        accumulate(basis, px, pn, &mut out);
    }
    out
}

fn accumulate(basis: &[RealHarmonic], x: [f64; 3], n: Option<[f64; 3]>, out: &mut PointData) {
    let r = out.r;
    let l_top = basis.iter().map(|b| b.l).max().unwrap_or(0);
    let rho = x[0].hypot(x[1]);
    let theta = rho.atan2(x[2]);
    let phi = x[1].atan2(x[0]);
    let table = LegendreTable::new(l_top, theta);
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    // n in the local spherical frame
    let (nr, nt, np) = match n {
        Some(n) => (
            n[0] * st * cp + n[1] * st * sp + n[2] * ct,
            n[0] * ct * cp + n[1] * ct * sp - n[2] * st,
            -n[0] * sp + n[1] * cp,
        ),
        None => (0.0, 0.0, 0.0),
    };
    let inv_r = if r > 0.0 { 1.0 / r } else { 0.0 };
    let inv_s = 1.0 / st.max(1e-300);
    for (j, b) in basis.iter().enumerate() {
        let ma = b.m.unsigned_abs() as usize;
        let (c, dc, w) = if b.m == 0 {
            (1.0, 0.0, 1.0)
        } else {
            let (s, co) = (ma as f64 * phi).sin_cos();
            if b.m > 0 {
                (co, -(ma as f64) * s, SQRT_2)
            } else {
                (s, ma as f64 * co, SQRT_2)
            }
        };
        let p = table.get(b.l, ma);
        let v = w * p * c;
        out.value[j] += v;
        if n.is_some() {
            out.radial[j] += nr * v;
            let dt = w * table.theta_deriv(b.l, ma) * c;
            let dp = if np != 0.0 && b.m != 0 { w * p * dc * inv_s } else { 0.0 };
            out.tangential[j] += inv_r * (nt * dt + np * dp);
        }
    }
}
