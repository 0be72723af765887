use helmholtz3d::geometry::{expand, volume_normalized_spheroid, BoundaryShape, QuadratureGrid, Symmetry, TabulatedGrid};
use helmholtz3d::oracle::{nearest_eigenvalue, sector_for, CollocationConfig, Sector};
use helmholtz3d::perturb::{assemble_spectrum, unperturbed_spectrum, Level};
use helmholtz3d::BoundaryCondition;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, Options, ShapeKind};
use crate::error::CliError;

/// Result of one command: the JSON payload plus a flat table for CSV.
pub struct Report {
    pub data: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub warnings: Vec<String>,
}

pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    let o = cmd.options();
    let mut warnings = Vec::new();
    if o.sweep.is_some() && !matches!(cmd, Command::Sweep(_)) {
        warnings.push("--sweep is only used by the sweep command; ignored".into());
    }
    let mut report = match cmd {
        Command::Table1(o) => table1(o)?,
        Command::Spectrum(o) => spectrum(o, o.oracle, &mut warnings)?,
        Command::Compare(o) => spectrum(o, true, &mut warnings)?,
        Command::Sweep(o) => sweep(o, &mut warnings)?,
        Command::Expand(o) => expansion(o, &mut warnings)?,
    };
    warnings.append(&mut report.warnings);
    report.warnings = warnings;
    Ok(report)
}

/// Builds the shape selected on the command line; `param` overrides the
/// swept parameter.
pub fn build_shape(o: &Options, param: Option<f64>, warnings: &mut Vec<String>) -> Result<BoundaryShape, CliError> {
    let mut range = |name: &str, v: f64, lo: f64, hi: f64| {
        if !(lo..=hi).contains(&v) {
            warnings.push(format!("{name} = {v} lies outside the tested range [{lo}, {hi}]"));
        }
    };
    let shape = match o.shape {
        ShapeKind::Sphere => BoundaryShape::sphere(1.0),
        ShapeKind::Spheroid => {
            let ratio = param.or(o.ratio).ok_or_else(|| CliError::usage("spheroid needs --ratio"))?;
            range("spheroid ratio", ratio, 0.75, 1.25);
            volume_normalized_spheroid(ratio)?
        }
        ShapeKind::Superegg => {
            let n = param.or(o.exponent).ok_or_else(|| CliError::usage("superegg needs --exponent"))?;
            range("superegg exponent", n, 1.5, 3.0);
            BoundaryShape::Superegg { a: 1.0, c: o.ratio.unwrap_or(1.0), n }
        }
        ShapeKind::Superquadric => {
            let t = param.or(o.exponent).ok_or_else(|| CliError::usage("superquadric needs --exponent"))?;
            range("superquadric exponent", t, 1.0, 20.0);
            BoundaryShape::Superquadric { t }
        }
        ShapeKind::Tabulated => {
            let path = o
                .tabulated_file
                .as_ref()
                .ok_or_else(|| CliError::usage("tabulated shape needs --tabulated-file"))?;
            BoundaryShape::Tabulated(TabulatedGrid::from_csv_path(path)?)
        }
    };
    shape.validate()?;
    Ok(shape)
}

pub fn shape_summary(shape: &BoundaryShape) -> Value {
    match shape {
        BoundaryShape::Tabulated(g) => json!({ "kind": "tabulated", "n_theta": g.n_theta, "n_phi": g.n_phi }),
        other => serde_json::to_value(other).unwrap_or(Value::Null),
    }
}

fn table1(o: &Options) -> Result<Report, CliError> {
    let count = o.levels.unwrap_or(6);
    let mut rows = Vec::new();
    let mut data = serde_json::Map::new();
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        let levels = unperturbed_spectrum(bc, 1.0, count)?;
        let mut list = Vec::new();
        for (rank, (m, deg)) in levels.iter().enumerate() {
            list.push(json!({ "rank": rank + 1, "n": m.spec.n, "l": m.spec.l, "degeneracy": deg, "k": m.rho0, "e0": m.e0 }));
            rows.push(vec![
                bc.name().to_string(),
                (rank + 1).to_string(),
                m.spec.n.to_string(),
                m.spec.l.to_string(),
                deg.to_string(),
                fmt(m.rho0),
                fmt(m.e0),
            ]);
        }
        data.insert(bc.name().to_string(), Value::Array(list));
    }
    Ok(Report {
        data: Value::Object(data),
        header: vec!["bc", "rank", "n", "l", "degeneracy", "k", "e0"],
        rows,
        warnings: vec![],
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    /// `None` when the sector mixes all `|m|`.
    pub m_abs: Option<u32>,
    pub sector: Sector,
    pub energy: f64,
    pub residual: f64,
    /// `(E_pert - E_oracle) / E_oracle`.
    pub rel_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelRow {
    #[serde(flatten)]
    pub level: Level,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleEntry>>,
}

/// Collocation settings used by the CLI for each kind of sector.
pub fn oracle_config(sector: Sector) -> CollocationConfig {
    let l_max = match sector {
        Sector::Azimuthal { .. } => 30,
        Sector::Cubic => 32,
        Sector::Full => 12,
    };
    CollocationConfig::default().with_l_max(l_max)
}

/// Point-matching eigenvalues next to one corrected level.
pub fn oracle_for_level(
    shape: &BoundaryShape,
    bc: BoundaryCondition,
    level: &Level,
    warnings: &mut Vec<String>,
) -> Vec<OracleEntry> {
    let per_m: Vec<Option<u32>> = match shape.symmetry() {
        Symmetry::Spherical | Symmetry::Axisymmetric { .. } => level.m_abs.iter().map(|&m| Some(m)).collect(),
        _ => vec![None],
    };
    let k = level.e_total.sqrt();
    let mut out = Vec::new();
    for m in per_m {
        let sector = match m {
            Some(m) => sector_for(shape, level.l, m),
            None => sector_for(shape, level.l, 0),
        };
        match nearest_eigenvalue(shape, bc, sector, k, 0.04 * k, &oracle_config(sector)) {
            Ok(e) => out.push(OracleEntry {
                m_abs: m,
                sector,
                energy: e.energy,
                residual: e.residual,
                rel_error: (level.e_total - e.energy) / e.energy,
            }),
            Err(err) => warnings.push(format!("oracle for level (n={}, l={}, |m|={m:?}): {err}", level.n, level.l)),
        }
    }
    out
}

fn spectrum(o: &Options, with_oracle: bool, warnings: &mut Vec<String>) -> Result<Report, CliError> {
    let shape = build_shape(o, None, warnings)?;
    let count = o.levels.unwrap_or(10);
    let spec = assemble_spectrum(&shape, o.bc, o.order, count, o.amax)?;
    warnings.extend(spec.warnings.iter().cloned());
    let mut rows = Vec::new();
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for lv in &spec.levels {
        let oracle = with_oracle.then(|| oracle_for_level(&shape, o.bc, lv, warnings));
        let m_abs = join(&lv.m_abs);
        if let Some(list) = &oracle {
            for e in list {
                worst = worst.max(e.rel_error.abs());
                rows.push(level_cells(lv, &m_abs, Some(e)));
            }
            if list.is_empty() {
                rows.push(level_cells(lv, &m_abs, None));
            }
        } else {
            rows.push(level_cells(lv, &m_abs, None));
        }
        out.push(LevelRow { level: lv.clone(), oracle });
    }
    let mut data = json!({
        "shape": shape_summary(&shape),
        "bc": o.bc.name(),
        "order": o.order,
        "r0": spec.r0,
        "a_max": spec.a_max,
        "tail_norm": spec.tail_norm,
        "levels": out,
    });
    if with_oracle {
        data["max_rel_error"] = json!(worst);
    }
    let mut header = vec!["n", "l", "m_abs", "multiplicity", "e0", "e1", "e2", "e_total", "corrected"];
    if with_oracle {
        header.extend(["oracle_m_abs", "oracle_energy", "oracle_residual", "rel_error"]);
        for r in rows.iter_mut() {
            r.resize(header.len(), String::new());
        }
    } else {
        for r in rows.iter_mut() {
            r.truncate(header.len());
        }
    }
    Ok(Report { data, header, rows, warnings: vec![] })
}

fn level_cells(lv: &Level, m_abs: &str, e: Option<&OracleEntry>) -> Vec<String> {
    let mut v = vec![
        lv.n.to_string(),
        lv.l.to_string(),
        m_abs.to_string(),
        lv.multiplicity.to_string(),
        fmt(lv.e0),
        fmt(lv.e1),
        fmt(lv.e2),
        fmt(lv.e_total),
        lv.corrected.to_string(),
    ];
    if let Some(e) = e {
        v.push(e.m_abs.map(|m| m.to_string()).unwrap_or_default());
        v.extend([fmt(e.energy), fmt(e.residual), fmt(e.rel_error)]);
    }
    v
}

/// One `|m|` branch of a level at one parameter value.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub n: u32,
    pub l: u32,
    pub m_abs: u32,
    pub multiplicity: usize,
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e_total: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
}

/// Sweep points for every parameter value, one per `(n, l, |m|)` branch,
/// in a fixed branch order so that each branch traces a curve.
pub fn sweep_points(o: &Options, values: &[f64], warnings: &mut Vec<String>) -> Result<Vec<SweepPoint>, CliError> {
    if matches!(o.shape, ShapeKind::Sphere | ShapeKind::Tabulated) {
        return Err(CliError::usage("sweep needs a spheroid, superegg or superquadric"));
    }
    let count = o.levels.unwrap_or(7);
    let mut out = Vec::new();
    for &v in values {
        let mut w = Vec::new();
        let shape = build_shape(o, Some(v), &mut w)?;
        let spec = assemble_spectrum(&shape, o.bc, o.order, count, o.amax)?;
        w.extend(spec.warnings.iter().cloned());
        for msg in w {
            if !warnings.contains(&msg) {
                warnings.push(msg);
            }
        }
        let mut pts = Vec::new();
        for lv in &spec.levels {
            let oracle = if o.oracle { oracle_for_level(&shape, o.bc, lv, warnings) } else { vec![] };
            for &m in &lv.m_abs {
                let mult = match (shape.is_axisymmetric(), m) {
                    (false, _) => lv.multiplicity,
                    (true, 0) => 1,
                    (true, _) => 2,
                };
                pts.push(SweepPoint {
                    value: v,
                    n: lv.n,
                    l: lv.l,
                    m_abs: m,
                    multiplicity: mult,
                    e0: lv.e0,
                    e1: lv.e1,
                    e2: lv.e2,
                    e_total: lv.e_total,
                    oracle: oracle.iter().find(|e| e.m_abs.is_none_or(|x| x == m)).map(|e| e.energy),
                });
                if !shape.is_axisymmetric() {
                    break;
                }
            }
        }
        pts.sort_by(|a, b| (a.e0.total_cmp(&b.e0)).then((a.n, a.l, a.m_abs).cmp(&(b.n, b.l, b.m_abs))));
        out.extend(pts);
    }
    Ok(out)
}

fn sweep(o: &Options, warnings: &mut Vec<String>) -> Result<Report, CliError> {
    let range = o.sweep.ok_or_else(|| CliError::usage("sweep needs --sweep from:to:steps"))?;
    let values = range.values();
    let pts = sweep_points(o, &values, warnings)?;
    let parameter = match o.shape {
        ShapeKind::Spheroid => "ratio",
        _ => "exponent",
    };
    let rows = pts
        .iter()
        .map(|p| {
            vec![
                fmt(p.value),
                p.n.to_string(),
                p.l.to_string(),
                p.m_abs.to_string(),
                p.multiplicity.to_string(),
                fmt(p.e0),
                fmt(p.e1),
                fmt(p.e2),
                fmt(p.e_total),
                p.oracle.map(fmt).unwrap_or_default(),
            ]
        })
        .collect();
    let data = json!({
        "shape": format!("{:?}", o.shape).to_lowercase(),
        "parameter": parameter,
        "bc": o.bc.name(),
        "order": o.order,
        "values": values,
        "points": pts,
    });
    Ok(Report {
        data,
        header: vec!["value", "n", "l", "m_abs", "multiplicity", "e0", "e1", "e2", "e_total", "oracle"],
        rows,
        warnings: vec![],
    })
}

fn expansion(o: &Options, warnings: &mut Vec<String>) -> Result<Report, CliError> {
    let shape = build_shape(o, None, warnings)?;
    let exp = expand(&shape, o.amax, &QuadratureGrid::for_degree(o.amax))?;
    let coeffs: Vec<Value> = exp
        .nonzero(1e-15)
        .map(|(a, b, c)| json!({ "a": a, "b": b, "re": c.re, "im": c.im }))
        .collect();
    let rows = exp
        .nonzero(1e-15)
        .map(|(a, b, c)| vec![a.to_string(), b.to_string(), fmt(c.re), fmt(c.im)])
        .collect();
    let data = json!({
        "shape": shape_summary(&shape),
        "r0": exp.r0,
        "a_max": exp.a_max,
        "tail_norm": exp.tail_norm,
        "coefficients": coeffs,
    });
    Ok(Report { data, header: vec!["a", "b", "re", "im"], rows, warnings: vec![] })
}

fn join(m: &[u32]) -> String {
    m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn fmt(x: f64) -> String {
    format!("{x:.12e}")
}
