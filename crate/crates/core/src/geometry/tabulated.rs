//! Boundaries given as samples `r(θ_i, φ_j)` on a uniform grid.
//!
//! The grid covers `θ ∈ [0, π]` with both poles included and `φ ∈ [0, 2π)`
//! with the periodic endpoint left out. Values between nodes come from
//! Catmull–Rom bicubic interpolation; stencils that cross a pole continue on
//! the opposite meridian when `N_φ` is even and are clamped otherwise.

use std::f64::consts::PI;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::shape::BoundaryShape;
use crate::error::{Error, Result};

/// Relative tolerance for deciding that a CSV grid is uniform.
const UNIFORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedGrid {
    pub n_theta: usize,
    pub n_phi: usize,
    /// Row-major, `θ` outer: `values[i * n_phi + j] = r(θ_i, φ_j)`.
    pub values: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct Row {
    theta: f64,
    phi: f64,
    r: f64,
}

impl TabulatedGrid {
    pub fn new(n_theta: usize, n_phi: usize, values: Vec<f64>) -> Result<Self> {
        let g = Self { n_theta, n_phi, values };
        g.validate()?;
        Ok(g)
    }

    /// Samples another shape on an `n_theta × n_phi` grid.
    pub fn sample(shape: &BoundaryShape, n_theta: usize, n_phi: usize) -> Result<Self> {
        let mut values = Vec::with_capacity(n_theta * n_phi);
        for i in 0..n_theta {
            for j in 0..n_phi {
                values.push(shape.radius(Self::theta_at(n_theta, i), Self::phi_at(n_phi, j)));
            }
        }
        Self::new(n_theta, n_phi, values)
    }

    fn theta_at(n_theta: usize, i: usize) -> f64 {
        PI * i as f64 / (n_theta - 1) as f64
    }

    fn phi_at(n_phi: usize, j: usize) -> f64 {
        2.0 * PI * j as f64 / n_phi as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_theta < 4 || self.n_phi < 4 {
            return Err(Error::Tabulated(format!(
                "grid must be at least 4 × 4, got {} × {}",
                self.n_theta, self.n_phi
            )));
        }
        if self.values.len() != self.n_theta * self.n_phi {
            return Err(Error::Tabulated(format!(
                "expected {} values, got {}",
                self.n_theta * self.n_phi,
                self.values.len()
            )));
        }
        if let Some((k, r)) = self.values.iter().enumerate().find(|(_, r)| !(r.is_finite() && **r > 0.0)) {
            let (i, j) = (k / self.n_phi, k % self.n_phi);
            return Err(Error::Tabulated(format!(
                "radius must be positive at theta = {:.6}, phi = {:.6}, got {r}",
                Self::theta_at(self.n_theta, i),
                Self::phi_at(self.n_phi, j)
            )));
        }
        Ok(())
    }

    /// Reads a `theta,phi,r` CSV (radians, `θ` outer loop).
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        let names: Vec<&str> = headers.iter().collect();
        if names != ["theta", "phi", "r"] {
            return Err(Error::Tabulated(format!("header must be theta,phi,r, got {}", names.join(","))));
        }
        let mut rows = Vec::new();
        for rec in rdr.deserialize() {
            let row: Row = rec?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Tabulated("no data rows".into()));
        }
        let n_phi = rows.iter().take_while(|r| r.theta == rows[0].theta).count();
        if n_phi == 0 || rows.len() % n_phi != 0 {
            return Err(Error::Tabulated(format!(
                "{} rows do not form full rows of {n_phi} azimuths",
                rows.len()
            )));
        }
        let n_theta = rows.len() / n_phi;
        if n_theta < 2 {
            return Err(Error::Tabulated("need at least two polar angles".into()));
        }
        for (k, row) in rows.iter().enumerate() {
            let (i, j) = (k / n_phi, k % n_phi);
            let (t, p) = (Self::theta_at(n_theta, i), Self::phi_at(n_phi, j));
            if (row.theta - t).abs() > UNIFORM_TOL * PI || (row.phi - p).abs() > UNIFORM_TOL * 2.0 * PI {
                return Err(Error::Tabulated(format!(
                    "row {} at (theta, phi) = ({}, {}) is off the uniform grid; expected ({t}, {p})",
                    k + 2,
                    row.theta,
                    row.phi
                )));
            }
        }
        Self::new(n_theta, n_phi, rows.into_iter().map(|r| r.r).collect())
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(std::io::BufReader::new(file))
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["theta", "phi", "r"])?;
        for i in 0..self.n_theta {
            for j in 0..self.n_phi {
                let t = Self::theta_at(self.n_theta, i);
                let p = Self::phi_at(self.n_phi, j);
                w.write_record(&[
                    format!("{t:.17e}"),
                    format!("{p:.17e}"),
                    format!("{:.17e}", self.values[i * self.n_phi + j]),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Node value with `θ` index possibly outside `0..n_theta` (continued
    /// over the poles) and `φ` index taken modulo `n_phi`.
    fn node(&self, i: i64, j: i64) -> f64 {
        let nt = self.n_theta as i64;
        let np = self.n_phi as i64;
        let (mut i, mut j) = (i, j);
        if i < 0 || i >= nt {
            if np % 2 == 0 {
                i = if i < 0 { -i } else { 2 * (nt - 1) - i };
                j += np / 2;
            } else {
                i = i.clamp(0, nt - 1);
            }
        }
        let j = j.rem_euclid(np);
        self.values[(i as usize) * self.n_phi + j as usize]
    }

    pub fn interpolate(&self, theta: f64, phi: f64) -> f64 {
        let dt = PI / (self.n_theta - 1) as f64;
        let dp = 2.0 * PI / self.n_phi as f64;
        let u = (theta / dt).clamp(0.0, (self.n_theta - 1) as f64);
        let v = phi.rem_euclid(2.0 * PI) / dp;
        let i0 = (u.floor() as i64).min(self.n_theta as i64 - 2);
        let j0 = v.floor() as i64;
        let (fu, fv) = (u - i0 as f64, v - j0 as f64);
        let mut col = [0.0; 4];
        for (a, c) in col.iter_mut().enumerate() {
            let i = i0 - 1 + a as i64;
            let p = [self.node(i, j0 - 1), self.node(i, j0), self.node(i, j0 + 1), self.node(i, j0 + 2)];
            *c = catmull_rom(p, fv);
        }
        catmull_rom(col, fu)
    }
}

fn catmull_rom(p: [f64; 4], t: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    0.5 * (2.0 * p[1]
        + (-p[0] + p[2]) * t
        + (2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3]) * t2
        + (-p[0] + 3.0 * p[1] - 3.0 * p[2] + p[3]) * t3)
}
