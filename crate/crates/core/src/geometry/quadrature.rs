//! Product quadrature on the unit sphere: Gauss–Legendre in `cos θ` times the
//! periodic trapezoid rule in `φ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_N_THETA: usize = 64;
pub const DEFAULT_N_PHI: usize = 128;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureGrid {
    /// Gauss–Legendre nodes in `x = cos θ`, ascending.
    pub cos_theta: Vec<f64>,
    pub theta: Vec<f64>,
    /// Weights in `x`; they sum to 2.
    pub theta_weights: Vec<f64>,
    pub phi: Vec<f64>,
    /// Uniform trapezoid weight `2π / N_φ`.
    pub phi_weight: f64,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::new(DEFAULT_N_THETA, DEFAULT_N_PHI).expect("default grid is valid")
    }
}

impl QuadratureGrid {
    /// Integrates exactly every spherical harmonic product `Y_a^b conj(Y_c^d)`
    /// with `a + c <= 2 n_theta - 1` and `|b - d| < n_phi`.
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::Domain("quadrature grid needs at least one node per axis".into()));
        }
        let (x, w) = gauss_legendre(n_theta);
        let theta = x.iter().map(|c| c.acos()).collect();
        let phi = (0..n_phi).map(|j| 2.0 * PI * j as f64 / n_phi as f64).collect();
        Ok(Self {
            cos_theta: x,
            theta,
            theta_weights: w,
            phi,
            phi_weight: 2.0 * PI / n_phi as f64,
        })
    }

    /// Grid just fine enough to expand a boundary up to degree `a_max`
    /// with some oversampling of the integrand.
    pub fn for_degree(a_max: usize) -> Self {
        let n_theta = (2 * a_max + 8).max(DEFAULT_N_THETA);
        let n_phi = (4 * a_max + 16).max(DEFAULT_N_PHI);
        Self::new(n_theta, n_phi).expect("non-empty grid")
    }

    pub fn n_theta(&self) -> usize {
        self.theta.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phi.len()
    }

    /// `∬ g(θ, φ) dΩ`.
    pub fn integrate<F: FnMut(f64, f64) -> f64>(&self, mut g: F) -> f64 {
        let mut total = 0.0;
        for (t, w) in self.theta.iter().zip(&self.theta_weights) {
            let row: f64 = self.phi.iter().map(|&p| g(*t, p)).sum();
            total += w * row;
        }
        total * self.phi_weight
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton on `P_n`).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_deriv(n, z);
        if d != 0.0 {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_deriv(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}
