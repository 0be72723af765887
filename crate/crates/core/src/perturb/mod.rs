//! Boundary perturbation theory about the sphere of mean radius `R0`.
//!
//! Energies are expanded as `E = E0 + E1 + E2` with the deformation strength
//! folded into the coefficients `C_a^b`. Non-degenerate (`l = 0`) states
//! accept any deformation; degenerate (`l >= 1`) states require an
//! axisymmetric one, for which `m` stays a good quantum number.
//!
//! Free constants of the homogeneous solution (`A_0^0`, `B_0^0`, `A_l^m`)
//! are fixed to zero. They never enter the eigenvalue corrections.

mod degenerate;
mod nondegenerate;
mod spectrum;
mod wave;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_zero, sph_jn_derivs, ZeroKind};

pub use degenerate::{e1_deg, e2_deg, first_order_coeffs_deg};
pub use nondegenerate::{e2_nondeg, first_order_coeffs_nondeg, second_order_coeffs_nondeg};
pub use spectrum::{
    assemble_from_expansion, assemble_spectrum, correct_mode, unperturbed_spectrum, Level, Spectrum,
};
pub use wave::{wavefunction_eval, WaveCoefficients, WaveSample};

/// Relative distance to a Bessel zero below which a denominator counts as an
/// accidental degeneracy.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Coefficients with `|C| <=` this are treated as absent, and a deformation
/// is axisymmetric when every `b != 0` coefficient is below it.
pub const COEFF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl BoundaryCondition {
    pub fn zero_kind(self) -> ZeroKind {
        match self {
            BoundaryCondition::Dirichlet => ZeroKind::Node,
            BoundaryCondition::Neumann => ZeroKind::DerivNode,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
        }
    }
}

impl std::str::FromStr for BoundaryCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" | "dbc" => Ok(BoundaryCondition::Dirichlet),
            "neumann" | "nbc" => Ok(BoundaryCondition::Neumann),
            other => Err(Error::Domain(format!("unknown boundary condition '{other}'"))),
        }
    }
}

/// Quantum numbers of a sphere eigenmode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeSpec {
    pub bc: BoundaryCondition,
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl ModeSpec {
    pub fn new(bc: BoundaryCondition, n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("radial quantum number n starts at 1".into()));
        }
        if m.unsigned_abs() > l {
            return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
        }
        Ok(Self { bc, n, l, m })
    }
}

/// A sphere eigenmode `ψ0 = norm · j_l(k0 r) Y_l^m` with `k0 = rho0 / R0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnperturbedMode {
    pub spec: ModeSpec,
    pub r0: f64,
    /// `β_{n,l}` (Dirichlet) or `α_{n,l}` (Neumann).
    pub rho0: f64,
    pub e0: f64,
    /// Radial normalisation; the angular factor is the unit-norm `Y_l^m`.
    pub norm: f64,
}

impl UnperturbedMode {
    pub fn new(spec: ModeSpec, r0: f64) -> Result<Self> {
        if !(r0.is_finite() && r0 > 0.0) {
            return Err(Error::Domain(format!("mean radius must be positive, got {r0}")));
        }
        let l = spec.l as usize;
        let rho0 = bessel_zero(spec.bc.zero_kind(), spec.n as usize, l)?;
        let norm = match spec.bc {
            BoundaryCondition::Dirichlet => {
                let jl1 = sph_jn_derivs(l + 1, rho0)[0];
                2f64.sqrt() / (r0.powf(1.5) * jl1.abs())
            }
            BoundaryCondition::Neumann => {
                let jl = sph_jn_derivs(l, rho0)[0];
                let ll = (l * (l + 1)) as f64;
                2f64.sqrt() * rho0 / (jl.abs() * (r0.powi(3) * (rho0 * rho0 - ll)).sqrt())
            }
        };
        Ok(Self { spec, r0, rho0, e0: rho0 * rho0 / (r0 * r0), norm })
    }

    pub fn k0(&self) -> f64 {
        self.rho0 / self.r0
    }
}

/// Energy corrections for one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionResult {
    pub mode: ModeSpec,
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e_total: f64,
    /// Largest angular order `p` that entered the sums.
    pub p_max: usize,
}

impl CorrectionResult {
    pub(crate) fn new(mode: ModeSpec, e0: f64, e1: f64, e2: f64, p_max: usize) -> Self {
        Self { mode, e0, e1, e2, e_total: e0 + e1 + e2, p_max }
    }

    /// Sum of the corrections kept at `order` (0, 1 or 2).
    pub fn at_order(&self, order: u8) -> f64 {
        match order {
            0 => self.e0,
            1 => self.e0 + self.e1,
            _ => self.e_total,
        }
    }
}

/// The denominator `g(ρ)` of the coefficient formulas, `g = j_p` (Dirichlet)
/// or `g = j_p'` (Neumann). Fails when `ρ` sits on a zero of `g`, i.e. when
/// `|g| < DEGENERACY_TOL · hypot(g, g')`.
pub(crate) fn check_denominator(bc: BoundaryCondition, p: usize, rho: f64) -> Result<f64> {
    let d = sph_jn_derivs(p, rho);
    let (g, dg) = match bc {
        BoundaryCondition::Dirichlet => (d[0], d[1]),
        BoundaryCondition::Neumann => (d[1], d[2]),
    };
    if g.abs() < DEGENERACY_TOL * g.hypot(dg) {
        return Err(Error::AccidentalDegeneracy { p, rho, value: g });
    }
    Ok(g)
}
