//! Sphere spectra and corrected spectra of deformed shapes.

use serde::{Deserialize, Serialize};

use super::degenerate::e2_deg;
use super::nondegenerate::e2_nondeg;
use super::{BoundaryCondition, CorrectionResult, ModeSpec, UnperturbedMode, COEFF_TOL};
use crate::error::{Error, Result};
use crate::geometry::{expand, BoundaryShape, HarmonicExpansion, QuadratureGrid};
use crate::parallel::par_map;
use crate::specfun::bessel_zero;

/// The `count` lowest sphere levels `(n, l)` for radius `r0`, ascending in
/// energy, each with its degeneracy `2l + 1`. Modes carry `m = 0`.
pub fn unperturbed_spectrum(bc: BoundaryCondition, r0: f64, count: usize) -> Result<Vec<(UnperturbedMode, usize)>> {
    if count == 0 {
        return Err(Error::Domain("level count must be at least 1".into()));
    }
    let kind = bc.zero_kind();
    let mut limit = 8.0;
    let zeros = loop {
        let mut found = Vec::new();
        for l in 0.. {
            if bessel_zero(kind, 1, l)? >= limit {
                break;
            }
            for n in 1.. {
                let z = bessel_zero(kind, n, l)?;
                if z >= limit {
                    break;
                }
                found.push((z, n, l));
            }
        }
        if found.len() >= count {
            break found;
        }
        limit *= 1.5;
    };
    let mut zeros = zeros;
    zeros.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
    zeros
        .into_iter()
        .take(count)
        .map(|(_, n, l)| {
            let spec = ModeSpec::new(bc, n as u32, l as u32, 0)?;
            Ok((UnperturbedMode::new(spec, r0)?, 2 * l + 1))
        })
        .collect()
}

/// `E1` and `E2` for one mode: the non-degenerate formulas for `l = 0`, the
/// axisymmetric degenerate ones otherwise.
pub fn correct_mode(spec: ModeSpec, exp: &HarmonicExpansion) -> Result<CorrectionResult> {
    let mode = UnperturbedMode::new(spec, exp.r0)?;
    if spec.l == 0 {
        e2_nondeg(&mode, exp)
    } else {
        e2_deg(&mode, exp)
    }
}

/// A corrected level: one `(n, l)` multiplet, or the part of it with the
/// listed `|m|` values when an axisymmetric deformation splits it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: u32,
    pub l: u32,
    /// The `|m|` values sharing this energy.
    pub m_abs: Vec<u32>,
    pub multiplicity: usize,
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e_total: f64,
    /// False when the level is reported at zeroth order only (degenerate
    /// level under a non-axisymmetric deformation, or a denominator on a
    /// Bessel zero).
    pub corrected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub bc: BoundaryCondition,
    pub order: u8,
    pub r0: f64,
    pub a_max: usize,
    /// Largest reconstruction error of the boundary expansion.
    pub tail_norm: f64,
    pub levels: Vec<Level>,
    pub warnings: Vec<String>,
}

/// Corrected spectrum of `shape` from its expansion up to degree `a_max`.
pub fn assemble_spectrum(
    shape: &BoundaryShape,
    bc: BoundaryCondition,
    order: u8,
    count: usize,
    a_max: usize,
) -> Result<Spectrum> {
    let exp = expand(shape, a_max, &QuadratureGrid::for_degree(a_max))?;
    assemble_from_expansion(&exp, bc, order, count)
}

fn truncate(c: &CorrectionResult, order: u8) -> (f64, f64) {
    match order {
        0 => (0.0, 0.0),
        1 => (c.e1, 0.0),
        _ => (c.e1, c.e2),
    }
}

/// Corrected spectrum of the `count` lowest sphere levels for a given
/// expansion. Levels are sorted by corrected energy.
pub fn assemble_from_expansion(exp: &HarmonicExpansion, bc: BoundaryCondition, order: u8, count: usize) -> Result<Spectrum> {
    if order > 2 {
        return Err(Error::Unsupported(format!("order {order} (at most 2)")));
    }
    let axisymmetric = exp.is_axisymmetric(COEFF_TOL);
    let base = unperturbed_spectrum(bc, exp.r0, count)?;
    let per_level = par_map(base, |(mode, _)| level_entries(mode, exp, order, axisymmetric));
    let mut levels = Vec::new();
    let mut warnings = Vec::new();
    for entry in per_level {
        let (mut lv, w) = entry?;
        levels.append(&mut lv);
        warnings.extend(w);
    }
    if !axisymmetric && levels.iter().any(|l| l.l > 0) && order > 0 {
        warnings.insert(
            0,
            "deformation is not axisymmetric: levels with l > 0 are reported at zeroth order".into(),
        );
    }
    levels.sort_by(|a, b| a.e_total.total_cmp(&b.e_total).then((a.n, a.l).cmp(&(b.n, b.l))));
    Ok(Spectrum { bc, order, r0: exp.r0, a_max: exp.a_max, tail_norm: exp.tail_norm, levels, warnings })
}

type Entries = (Vec<Level>, Vec<String>);

fn level_entries(mode: UnperturbedMode, exp: &HarmonicExpansion, order: u8, axisymmetric: bool) -> Result<Entries> {
    let spec = mode.spec;
    let l = spec.l;
    let uncorrected = |m_abs: Vec<u32>, multiplicity| Level {
        n: spec.n,
        l,
        m_abs,
        multiplicity,
        e0: mode.e0,
        e1: 0.0,
        e2: 0.0,
        e_total: mode.e0,
        corrected: false,
    };
    if l > 0 && !axisymmetric {
        return Ok((vec![uncorrected((0..=l).collect(), (2 * l + 1) as usize)], vec![]));
    }
    let mut out: Vec<Level> = Vec::new();
    let mut warnings = Vec::new();
    for m in 0..=l {
        let mult = if m == 0 { 1 } else { 2 };
        let s = ModeSpec { m: m as i32, ..spec };
        let lv = match correct_mode(s, exp) {
            Ok(c) => {
                let (e1, e2) = truncate(&c, order);
                Level {
                    n: spec.n,
                    l,
                    m_abs: vec![m],
                    multiplicity: mult,
                    e0: c.e0,
                    e1,
                    e2,
                    e_total: c.e0 + e1 + e2,
                    corrected: true,
                }
            }
            Err(Error::AccidentalDegeneracy { p, rho, value }) => {
                warnings.push(format!(
                    "level (n={}, l={l}, |m|={m}): denominator of order p={p} vanishes at rho={rho:.10} (value {value:.3e}); reported at zeroth order",
                    spec.n
                ));
                uncorrected(vec![m], mult)
            }
            Err(e) => return Err(e),
        };
        // merge |m| values that stay degenerate (always the case for a sphere)
        match out.last_mut() {
            Some(prev)
                if prev.corrected == lv.corrected
                    && (prev.e_total - lv.e_total).abs() <= 1e-12 * lv.e0
                    && (prev.e1 - lv.e1).abs() <= 1e-12 * lv.e0 =>
            {
                prev.m_abs.push(m);
                prev.multiplicity += mult;
            }
            _ => out.push(lv),
        }
    }
    Ok((out, warnings))
}
