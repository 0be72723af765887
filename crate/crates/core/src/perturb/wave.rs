//! Evaluation of the truncated perturbative wavefunction
//! `ψ0 + ψ1 + ψ2` and its gradient.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ModeSpec, UnperturbedMode};
use crate::error::{Error, Result};
use crate::geometry::RadiusJet;
use crate::specfun::bessel::sph_jn_array_d1;
use crate::specfun::{AngularIndex, LegendreTable};

/// Coefficients of the perturbed wavefunction
///
/// `ψ0 = norm j_l(k0 r) Y_l^m`,
/// `ψ1 = Σ A_p^q j_p Y_p^q - (E1/2E0) norm ρ j_{l+1}(ρ) Y_l^m`,
/// `ψ2 = Σ B_p^q j_p Y_p^q - (E2/2E0) norm ρ j_{l+1}(ρ) Y_l^m` (`l = 0` only),
///
/// with `ρ = k0 r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveCoefficients {
    pub mode: ModeSpec,
    pub r0: f64,
    pub k0: f64,
    pub norm: f64,
    pub e1_over_e0: f64,
    pub e2_over_e0: f64,
    pub first_order: BTreeMap<AngularIndex, Complex64>,
    /// Empty unless second order coefficients were computed.
    pub second_order: BTreeMap<AngularIndex, Complex64>,
}

impl WaveCoefficients {
    pub(crate) fn zeroth(mode: &UnperturbedMode) -> Self {
        Self {
            mode: mode.spec,
            r0: mode.r0,
            k0: mode.k0(),
            norm: mode.norm,
            e1_over_e0: 0.0,
            e2_over_e0: 0.0,
            first_order: BTreeMap::new(),
            second_order: BTreeMap::new(),
        }
    }

    fn degree(&self) -> usize {
        let l = self.mode.l as usize;
        self.first_order
            .keys()
            .chain(self.second_order.keys())
            .map(|k| k.l as usize)
            .max()
            .unwrap_or(0)
            .max(l + 1)
    }
}

/// `ψ` with its partial derivatives in spherical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample {
    pub value: Complex64,
    pub d_r: Complex64,
    pub d_theta: Complex64,
    pub d_phi: Complex64,
}

impl WaveSample {
    /// `n̂ · ∇ψ` on the surface `r = r(θ, φ)` described by `jet`.
    pub fn normal_derivative(&self, jet: &RadiusJet, theta: f64) -> Complex64 {
        let r = jet.r;
        let s = theta.sin().max(1e-300);
        let gt = jet.dr_dtheta / r;
        let gp = jet.dr_dphi / (r * s);
        let norm = (1.0 + gt * gt + gp * gp).sqrt();
        (self.d_r - self.d_theta * (gt / r) - self.d_phi * (gp / (r * s))) / norm
    }
}

/// Evaluates the wavefunction truncated at `order` (0, 1 or 2) at `(r, θ, φ)`.
pub fn wavefunction_eval(w: &WaveCoefficients, r: f64, theta: f64, phi: f64, order: u8) -> Result<WaveSample> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("radius must be non-negative, got {r}")));
    }
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!("polar angle must lie in [0, π], got {theta}")));
    }
    if order > 2 {
        return Err(Error::Unsupported(format!("order {order} (at most 2)")));
    }
    if order == 2 && w.mode.l != 0 {
        return Err(Error::Unsupported("second order wavefunction of a degenerate mode".into()));
    }
    let deg = w.degree();
    let table = LegendreTable::new(deg, theta);
    let k = w.k0;
    let x = k * r;
    let (j, dj) = sph_jn_array_d1(deg + 1, x);
    let mut out = WaveSample {
        value: Complex64::new(0.0, 0.0),
        d_r: Complex64::new(0.0, 0.0),
        d_theta: Complex64::new(0.0, 0.0),
        d_phi: Complex64::new(0.0, 0.0),
    };
    // coef · g(r) Y_p^q with radial value g and dg/dr
    let mut add = |p: usize, q: i64, coef: Complex64, g: f64, dg: f64| {
        let sign = if q < 0 && q % 2 != 0 { -1.0 } else { 1.0 };
        let e = Complex64::from_polar(1.0, q as f64 * phi);
        let y = e * (sign * table.get(p, q.unsigned_abs() as usize));
        let yt = e * (sign * table.theta_deriv(p, q.unsigned_abs() as usize));
        out.value += coef * g * y;
        out.d_r += coef * dg * y;
        out.d_theta += coef * g * yt;
        out.d_phi += coef * g * Complex64::new(0.0, q as f64) * y;
    };
    let l = w.mode.l as usize;
    let m = w.mode.m as i64;
    let one = Complex64::new(1.0, 0.0);
    add(l, m, one * w.norm, j[l], k * dj[l]);
    if order == 0 {
        return Ok(out);
    }
    // ρ j_{l+1}(ρ) and its r-derivative
    let (pj, dpj) = (x * j[l + 1], k * (j[l + 1] + x * dj[l + 1]));
    for (idx, a) in &w.first_order {
        let p = idx.l as usize;
        add(p, idx.m as i64, *a, j[p], k * dj[p]);
    }
    let mut particular = -0.5 * w.e1_over_e0;
    if order == 2 {
        for (idx, b) in &w.second_order {
            let p = idx.l as usize;
            add(p, idx.m as i64, *b, j[p], k * dj[p]);
        }
        particular -= 0.5 * w.e2_over_e0;
    }
    if particular != 0.0 {
        add(l, m, one * (particular * w.norm), pj, dpj);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturb::{BoundaryCondition, ModeSpec};
    use std::f64::consts::PI;

    fn ground() -> UnperturbedMode {
        UnperturbedMode::new(ModeSpec::new(BoundaryCondition::Dirichlet, 1, 0, 0).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn zeroth_order_values() {
        let m = ground();
        let w = WaveCoefficients::zeroth(&m);
        let on = wavefunction_eval(&w, 1.0, 0.7, 0.2, 0).unwrap();
        assert!(on.value.norm() < 1e-15);
        let half = wavefunction_eval(&w, 0.5, 0.7, 0.2, 0).unwrap();
        let expect = m.norm / (4.0 * PI).sqrt() * 2.0 / PI;
        assert!((half.value.re - expect).abs() < 1e-14);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mode = UnperturbedMode::new(ModeSpec::new(BoundaryCondition::Neumann, 1, 2, 1).unwrap(), 1.0).unwrap();
        let mut w = WaveCoefficients::zeroth(&mode);
        w.first_order.insert(AngularIndex { l: 3, m: -2 }, Complex64::new(0.3, -0.1));
        w.e1_over_e0 = 0.2;
        let (r, t, p, h) = (0.8, 1.1, 0.4, 1e-6);
        let s = wavefunction_eval(&w, r, t, p, 1).unwrap();
        let f = |r, t, p| wavefunction_eval(&w, r, t, p, 1).unwrap().value;
        assert!(((f(r + h, t, p) - f(r - h, t, p)) / (2.0 * h) - s.d_r).norm() < 1e-7);
        assert!(((f(r, t + h, p) - f(r, t - h, p)) / (2.0 * h) - s.d_theta).norm() < 1e-7);
        assert!(((f(r, t, p + h) - f(r, t, p - h)) / (2.0 * h) - s.d_phi).norm() < 1e-7);
    }

    #[test]
    fn rejects_bad_points() {
        let w = WaveCoefficients::zeroth(&ground());
        assert!(wavefunction_eval(&w, -0.1, 0.5, 0.0, 0).is_err());
        assert!(wavefunction_eval(&w, 0.1, 4.0, 0.0, 0).is_err());
    }
}
