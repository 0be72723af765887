//! Orthonormal complex spherical harmonics with the Condon–Shortley phase,
//! `Y_l^{-m} = (-1)^m conj(Y_l^m)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Angular quantum numbers `(l, m)` with `|m| <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AngularIndex {
    pub l: u32,
    pub m: i32,
}

impl AngularIndex {
    pub fn new(l: i64, m: i64) -> Result<Self> {
        if l < 0 || m.abs() > l {
            return Err(Error::Domain(format!("invalid angular index (l = {l}, m = {m})")));
        }
        Ok(Self { l: l as u32, m: m as i32 })
    }
}

/// Normalised associated Legendre functions
/// `P̃_l^m(cos θ) = sqrt((2l+1)/(4π) (l-m)!/(l+m)!) P_l^m(cos θ)` for
/// `0 <= m <= l <= lmax`, Condon–Shortley phase included, so that
/// `Y_l^m = P̃_l^m e^{imφ}`.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    lmax: usize,
    values: Vec<f64>,
}

impl LegendreTable {
    pub fn new(lmax: usize, theta: f64) -> Self {
        let (s, x) = theta.sin_cos();
        let mut values = vec![0.0; (lmax + 1) * (lmax + 2) / 2];
        let idx = |l: usize, m: usize| l * (l + 1) / 2 + m;
        let mut pmm = (0.25 / std::f64::consts::PI).sqrt();
        for m in 0..=lmax {
            if m > 0 {
                pmm *= -((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s;
            }
            values[idx(m, m)] = pmm;
            if m < lmax {
                values[idx(m + 1, m)] = ((2 * m + 3) as f64).sqrt() * x * pmm;
            }
            for l in m + 2..=lmax {
                let (lf, mf) = (l as f64, m as f64);
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
                values[idx(l, m)] = a * (x * values[idx(l - 1, m)] - b * values[idx(l - 2, m)]);
            }
        }
        Self { lmax, values }
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    /// `P̃_l^m` for `0 <= m <= l`.
    #[inline]
    pub fn get(&self, l: usize, m: usize) -> f64 {
        debug_assert!(m <= l && l <= self.lmax);
        self.values[l * (l + 1) / 2 + m]
    }

    /// `P̃_l^m` for signed `m`, using `P̃_l^{-m} = (-1)^m P̃_l^m`.
    #[inline]
    pub fn get_signed(&self, l: usize, m: i64) -> f64 {
        let v = self.get(l, m.unsigned_abs() as usize);
        if m < 0 && m % 2 != 0 {
            -v
        } else {
            v
        }
    }

    /// `d P̃_l^m / dθ` for `0 <= m <= l`.
    pub fn theta_deriv(&self, l: usize, m: usize) -> f64 {
        let (lf, mf) = (l as f64, m as f64);
        let up = if m < l { ((lf - mf) * (lf + mf + 1.0)).sqrt() * self.get(l, m + 1) } else { 0.0 };
        let down = if l == 0 {
            0.0
        } else {
            ((lf + mf) * (lf - mf + 1.0)).sqrt() * self.get_signed(l, m as i64 - 1)
        };
        0.5 * (up - down)
    }
}

/// `Y_l^m(θ, φ)` without argument checks; `m` may be negative.
pub fn ylm(l: usize, m: i64, theta: f64, phi: f64) -> Complex64 {
    let p = LegendreTable::new(l, theta).get_signed(l, m);
    Complex64::from_polar(1.0, m as f64 * phi) * p
}

fn check_index(idx: AngularIndex) -> Result<()> {
    AngularIndex::new(idx.l as i64, idx.m as i64).map(|_| ())
}

/// Orthonormal spherical harmonic `Y_l^m(θ, φ)`.
pub fn sph_harm(idx: AngularIndex, theta: f64, phi: f64) -> Result<Complex64> {
    check_theta(theta)?;
    check_index(idx)?;
    Ok(ylm(idx.l as usize, idx.m as i64, theta, phi))
}

/// `∂Y_l^m/∂θ`, from the ladder identity
/// `∂_θ Y_l^m = ½ [ sqrt((l-m)(l+m+1)) e^{-iφ} Y_l^{m+1}
///               - sqrt((l+m)(l-m+1)) e^{+iφ} Y_l^{m-1} ]`.
pub fn sph_harm_theta_deriv(idx: AngularIndex, theta: f64, phi: f64) -> Result<Complex64> {
    check_theta(theta)?;
    check_index(idx)?;
    let l = idx.l as usize;
    let m = idx.m as i64;
    let (lf, mf) = (l as f64, m as f64);
    let table = LegendreTable::new(l, theta);
    let y = |mm: i64| -> Complex64 {
        if mm.unsigned_abs() as usize > l {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(1.0, mm as f64 * phi) * table.get_signed(l, mm)
        }
    };
    let up = ((lf - mf) * (lf + mf + 1.0)).sqrt() * Complex64::from_polar(1.0, -phi) * y(m + 1);
    let down = ((lf + mf) * (lf - mf + 1.0)).sqrt() * Complex64::from_polar(1.0, phi) * y(m - 1);
    Ok(0.5 * (up - down))
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!("polar angle must lie in [0, π], got {theta}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn idx(l: i64, m: i64) -> AngularIndex {
        AngularIndex::new(l, m).unwrap()
    }

    #[test]
    fn low_order_values() {
        let y00 = sph_harm(idx(0, 0), 1.1, 2.3).unwrap();
        assert!((y00.re - 0.2820948).abs() < 1e-7 && y00.im == 0.0);
        let y10 = sph_harm(idx(1, 0), 0.0, 0.0).unwrap();
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
        // Y_1^1 = -sqrt(3/8π) sin θ e^{iφ}
        let y11 = sph_harm(idx(1, 1), 0.7, 0.4).unwrap();
        let expect = Complex64::from_polar(-(3.0 / (8.0 * PI)).sqrt() * 0.7f64.sin(), 0.4);
        assert!((y11 - expect).norm() < 1e-15);
    }

    #[test]
    fn conjugation_relation() {
        for (i, l) in (1..=8).enumerate() {
            for m in 1..=l {
                let (t, p) = (0.1 + 0.37 * i as f64, 0.2 + 0.91 * m as f64);
                let plus = sph_harm(idx(l, m), t, p).unwrap();
                let minus = sph_harm(idx(l, -m), t, p).unwrap();
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((minus - sign * plus.conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn theta_derivative_closed_forms() {
        let d = sph_harm_theta_deriv(idx(1, 0), PI / 2.0, 0.0).unwrap();
        assert!((d.re + (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
        assert!(sph_harm_theta_deriv(idx(0, 0), 0.3, 0.1).unwrap().norm() == 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(AngularIndex::new(1, 2).is_err());
        assert!(AngularIndex::new(-1, 0).is_err());
        assert!(sph_harm(idx(1, 0), -0.1, 0.0).is_err());
    }

    #[test]
    fn legendre_theta_deriv_matches_finite_difference() {
        let h = 1e-6;
        for &t in &[0.3, 1.2, 2.9] {
            let a = LegendreTable::new(9, t);
            let lo = LegendreTable::new(9, t - h);
            let hi = LegendreTable::new(9, t + h);
            for l in 0..=9 {
                for m in 0..=l {
                    let fd = (hi.get(l, m) - lo.get(l, m)) / (2.0 * h);
                    assert!((a.theta_deriv(l, m) - fd).abs() < 1e-8, "l={l} m={m}");
                }
            }
        }
    }
}
