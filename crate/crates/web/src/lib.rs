//! Browser bindings. Every export takes plain numbers and strings and
//! returns a JSON string, so the page needs no generated glue beyond
//! wasm-bindgen's own.

use std::str::FromStr;

use helmholtz3d::geometry::{expand, volume_normalized_spheroid, BoundaryShape, QuadratureGrid};
use helmholtz3d::perturb::{assemble_spectrum, Level};
use helmholtz3d::BoundaryCondition;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Shapes the page can build from one parameter.
pub fn shape(kind: &str, param: f64) -> Result<BoundaryShape, String> {
    let s = match kind {
        "sphere" => BoundaryShape::sphere(1.0),
        "spheroid" => volume_normalized_spheroid(param).map_err(|e| e.to_string())?,
        "superegg" => BoundaryShape::Superegg { a: 1.0, c: 1.0, n: param },
        "superquadric" => BoundaryShape::Superquadric { t: param },
        other => return Err(format!("unknown shape '{other}'")),
    };
    s.validate().map_err(|e| e.to_string())?;
    Ok(s)
}

fn bc(name: &str) -> Result<BoundaryCondition, String> {
    BoundaryCondition::from_str(name).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SpectrumOut {
    r0: f64,
    tail_norm: f64,
    levels: Vec<Level>,
    warnings: Vec<String>,
}

/// Corrected levels of one shape.
pub fn spectrum_json(kind: &str, param: f64, bc_name: &str, order: u8, levels: usize, a_max: usize) -> Result<String, String> {
    let s = shape(kind, param)?;
    let sp = assemble_spectrum(&s, bc(bc_name)?, order, levels, a_max).map_err(|e| e.to_string())?;
    let out = SpectrumOut { r0: sp.r0, tail_norm: sp.tail_norm, levels: sp.levels, warnings: sp.warnings };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Branch {
    n: u32,
    l: u32,
    m_abs: u32,
    energies: Vec<f64>,
}

#[derive(Serialize)]
struct SweepOut {
    values: Vec<f64>,
    branches: Vec<Branch>,
}

/// Corrected energies along `from..=to`, one curve per `(n, l, |m|)`.
/// Non-axisymmetric shapes give one curve per `(n, l)`.
pub fn sweep_json(kind: &str, from: f64, to: f64, steps: usize, bc_name: &str, levels: usize) -> Result<String, String> {
    if steps == 0 || steps > 400 {
        return Err("steps must be in 1..=400".into());
    }
    let bc = bc(bc_name)?;
    let values: Vec<f64> = (0..=steps).map(|i| from + (to - from) * i as f64 / steps as f64).collect();
    let mut branches: Vec<Branch> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let s = shape(kind, v)?;
        let sp = assemble_spectrum(&s, bc, 2, levels, 24).map_err(|e| e.to_string())?;
        for lv in &sp.levels {
            let ms: &[u32] = if s.is_axisymmetric() { &lv.m_abs } else { &lv.m_abs[..1] };
            for &m in ms {
                let key = (lv.n, lv.l, if s.is_axisymmetric() { m } else { 0 });
                let b = match branches.iter_mut().find(|b| (b.n, b.l, b.m_abs) == key) {
                    Some(b) => b,
                    None => {
                        branches.push(Branch { n: key.0, l: key.1, m_abs: key.2, energies: vec![f64::NAN; values.len()] });
                        branches.last_mut().unwrap()
                    }
                };
                b.energies[i] = lv.e_total;
            }
        }
    }
    branches.sort_by_key(|b| (b.n, b.l, b.m_abs));
    serde_json::to_string(&SweepOut { values, branches }).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ProfileOut {
    r0: f64,
    tail_norm: f64,
    theta: Vec<f64>,
    exact: Vec<f64>,
    truncated: Vec<f64>,
    coefficients: Vec<(usize, i64, f64, f64)>,
}

/// Meridian cross-section (φ = 0) of the shape next to its expansion
/// truncated at `a_max`.
pub fn profile_json(kind: &str, param: f64, a_max: usize, points: usize) -> Result<String, String> {
    if !(2..=2000).contains(&points) {
        return Err("points must be in 2..=2000".into());
    }
    let s = shape(kind, param)?;
    let exp = expand(&s, a_max, &QuadratureGrid::for_degree(a_max)).map_err(|e| e.to_string())?;
    let theta: Vec<f64> = (0..points).map(|i| std::f64::consts::PI * i as f64 / (points - 1) as f64).collect();
    let out = ProfileOut {
        r0: exp.r0,
        tail_norm: exp.tail_norm,
        exact: theta.iter().map(|&t| s.radius(t, 0.0)).collect(),
        truncated: theta.iter().map(|&t| exp.reconstruct(t, 0.0)).collect(),
        coefficients: exp.nonzero(1e-12).map(|(a, b, c)| (a, b, c.re, c.im)).collect(),
        theta,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn spectrum(kind: &str, param: f64, bc: &str, order: u8, levels: usize, a_max: usize) -> Result<String, JsError> {
    spectrum_json(kind, param, bc, order, levels, a_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sweep(kind: &str, from: f64, to: f64, steps: usize, bc: &str, levels: usize) -> Result<String, JsError> {
    sweep_json(kind, from, to, steps, bc, levels).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn profile(kind: &str, param: f64, a_max: usize, points: usize) -> Result<String, JsError> {
    profile_json(kind, param, a_max, points).map_err(|e| JsError::new(&e))
}
