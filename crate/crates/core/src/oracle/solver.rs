use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI};

use super::basis::{point_data, PointData, RealHarmonic, Sector};
use crate::error::{Error, Result};
use crate::geometry::quadrature::gauss_legendre;
use crate::geometry::{centroid, BoundaryShape, QuadratureGrid};
use crate::parallel::par_map;
use crate::perturb::BoundaryCondition;
use crate::specfun::bessel::sph_jn_array_d1;

/// Discretisation and search parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CollocationConfig {
    /// Highest degree of the spherical-wave basis.
    pub l_max: usize,
    /// Boundary points per basis function.
    pub points_factor: f64,
    /// Interior points; 0 picks one per two basis functions (at least 8).
    pub n_interior: usize,
    /// `(k_min, k_max, steps)` for the coarse scan of `σ(k)`.
    pub k_scan: (f64, f64, usize),
    /// Absolute tolerance on `k` for the refinement.
    pub refine_tol: f64,
    /// Minima whose boundary residual exceeds this are discarded.
    pub accept_residual: f64,
    pub seed: u64,
}

impl Default for CollocationConfig {
    fn default() -> Self {
        Self {
            l_max: 16,
            points_factor: 3.0,
            n_interior: 0,
            k_scan: (1.0, 10.0, 200),
            refine_tol: 1e-11,
            accept_residual: 1e-2,
            seed: 7,
        }
    }
}

impl CollocationConfig {
    pub fn with_l_max(mut self, l_max: usize) -> Self {
        self.l_max = l_max;
        self
    }
}

/// One refined minimum of `σ(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleEigen {
    pub k: f64,
    /// `E = k²`.
    pub energy: f64,
    pub sigma: f64,
    /// Largest boundary-condition violation relative to the largest interior
    /// value of the computed eigenfunction.
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleResult {
    pub sector: Sector,
    pub eigen: Vec<OracleEigen>,
    /// `(k, σ)` samples of the coarse scan.
    pub sigma_curve: Vec<(f64, f64)>,
}

impl OracleResult {
    pub fn energies(&self) -> Vec<f64> {
        self.eigen.iter().map(|e| e.energy).collect()
    }
}

/// Collocation points and precomputed angular data for one shape, boundary
/// condition and sector. Only the radial Bessel factors depend on `k`.
#[derive(Debug, Clone)]
pub struct Collocation {
    bc: BoundaryCondition,
    sector: Sector,
    degrees: Vec<usize>,
    boundary: Vec<PointData>,
    interior: Vec<PointData>,
}

impl Collocation {
    pub fn new(shape: &BoundaryShape, bc: BoundaryCondition, sector: Sector, config: &CollocationConfig) -> Result<Self> {
        shape.validate()?;
        if config.l_max == 0 || config.l_max > 80 {
            return Err(Error::Domain(format!("l_max must lie in 1..=80, got {}", config.l_max)));
        }
        if !(config.points_factor >= 1.0) {
            return Err(Error::Domain(format!("points_factor must be at least 1, got {}", config.points_factor)));
        }
        if let Sector::Azimuthal { m, parity } = sector {
            if !shape.is_axisymmetric() {
                return Err(Error::Unsupported("azimuthal sector on a shape that is not axisymmetric".into()));
            }
            if parity.is_some() && !matches!(shape.symmetry(), crate::geometry::Symmetry::Axisymmetric { mirror: true } | crate::geometry::Symmetry::Spherical) {
                return Err(Error::Unsupported("parity sector on a shape without z mirror symmetry".into()));
            }
            if m as usize > config.l_max {
                return Err(Error::Domain(format!("|m| = {m} exceeds l_max = {}", config.l_max)));
            }
        }
        if sector == Sector::Cubic && shape.symmetry() != crate::geometry::Symmetry::Cubic {
            return Err(Error::Unsupported("cubic sector on a shape without cube symmetry".into()));
        }
        let basis: Vec<RealHarmonic> = sector.basis(config.l_max);
        let n_basis = basis.len();
        let centre = match sector {
            Sector::Full => centroid(shape, &QuadratureGrid::default()),
            Sector::Azimuthal { parity: None, .. } => [0.0, 0.0, centroid(shape, &QuadratureGrid::default())[2]],
            _ => [0.0; 3],
        };
        let target = (config.points_factor * n_basis as f64).ceil() as usize;
        let directions = boundary_directions(&sector, target);
        let boundary = directions
            .iter()
            .map(|&(t, p)| {
                let jet = shape.radius_jet(t, p);
                let (u, et, ep) = frame(t, p);
                let x = [jet.r * u[0], jet.r * u[1], jet.r * u[2]];
                let gt = jet.dr_dtheta / jet.r;
                let gp = jet.dr_dphi / (jet.r * t.sin().max(1e-300));
                let mut n = [0.0; 3];
                for i in 0..3 {
                    n[i] = u[i] - gt * et[i] - gp * ep[i];
                }
                let s = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
                let n = [n[0] / s, n[1] / s, n[2] / s];
                point_data(&sector, &basis, sub(x, centre), Some(n))
            })
            .collect();
        let n_interior = if config.n_interior == 0 { (n_basis / 2).max(8) } else { config.n_interior };
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut interior = Vec::with_capacity(n_interior);
        while interior.len() < n_interior {
            let (t, p) = random_direction(&mut rng, &sector);
            if !sector.contains(t, p) {
                continue;
            }
            let f = rng.random_range(0.2..0.9) * shape.radius(t, p);
            let (u, _, _) = frame(t, p);
            interior.push(point_data(&sector, &basis, sub([f * u[0], f * u[1], f * u[2]], centre), None));
        }
        Ok(Self { bc, sector, degrees: basis.iter().map(|b| b.l).collect(), boundary, interior })
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn n_basis(&self) -> usize {
        self.degrees.len()
    }

    pub fn n_boundary(&self) -> usize {
        self.boundary.len()
    }

    /// Row-normalised, column-normalised collocation matrix (boundary rows
    /// first) and the row norms that were divided out.
    fn matrix(&self, k: f64) -> (DMatrix<f64>, Vec<f64>) {
        let l_top = self.degrees.iter().copied().max().unwrap_or(0);
        let nb = self.boundary.len();
        let rows = nb + self.interior.len();
        let cols = self.degrees.len();
        let mut a = DMatrix::zeros(rows, cols);
        let mut norms = vec![0.0; rows];
        for (i, pt) in self.boundary.iter().chain(&self.interior).enumerate() {
            let (j, dj) = sph_jn_array_d1(l_top, k * pt.r);
            let on_boundary = i < nb;
            for (c, &l) in self.degrees.iter().enumerate() {
                a[(i, c)] = if on_boundary && self.bc == BoundaryCondition::Neumann {
                    k * dj[l] * pt.radial[c] + j[l] * pt.tangential[c]
                } else {
                    j[l] * pt.value[c]
                };
            }
            let s = a.row(i).norm();
            if s > 0.0 {
                a.row_mut(i).scale_mut(1.0 / s);
            }
            norms[i] = s;
        }
        for mut col in a.column_iter_mut() {
            let s = col.norm();
            if s > 0.0 {
                col.scale_mut(1.0 / s);
            }
        }
        (a, norms)
    }

    /// Orthonormal basis of the column space and the SVD of its boundary
    /// block, for `σ` and the minimising combination.
    fn decompose(&self, k: f64, want_vector: bool) -> Result<(f64, Option<f64>)> {
        let (a, norms) = self.matrix(k);
        let nb = self.boundary.len();
        let svd = a.svd(true, false);
        let smax = svd.singular_values.max();
        if !(smax > 0.0) || !smax.is_finite() {
            return Err(Error::Conditioning(format!("collocation matrix is zero at k = {k}")));
        }
        let u = svd.u.ok_or_else(|| Error::Conditioning("SVD did not return U".into()))?;
        let keep: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&i| svd.singular_values[i] > 1e-13 * smax)
            .collect();
        let q = u.select_columns(&keep);
        let qb = q.rows(0, nb).into_owned();
        let inner = qb.svd(false, want_vector);
        let (imin, sigma) = inner
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, s)| (i, *s))
            .ok_or_else(|| Error::Conditioning("empty boundary block".into()))?;
        if !want_vector {
            return Ok((sigma, None));
        }
        let vt = inner.v_t.ok_or_else(|| Error::Conditioning("SVD did not return V".into()))?;
        let y = vt.row(imin).transpose();
        let vals = &q * y;
        let mut b_max: f64 = 0.0;
        let mut i_max: f64 = 0.0;
        for (i, v) in vals.iter().enumerate() {
            let actual = (v * norms[i]).abs();
            if i < nb {
                b_max = b_max.max(actual);
            } else {
                i_max = i_max.max(actual);
            }
        }
        let scale = match self.bc {
            BoundaryCondition::Dirichlet => i_max,
            BoundaryCondition::Neumann => k * i_max,
        };
        let residual = if scale > 0.0 { b_max / scale } else { f64::INFINITY };
        Ok((sigma, Some(residual)))
    }

    /// `σ(k)`: the sine of the angle between the span of the basis and the
    /// functions satisfying the boundary condition exactly.
    pub fn sigma(&self, k: f64) -> Result<f64> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Domain(format!("k must be positive, got {k}")));
        }
        Ok(self.decompose(k, false)?.0)
    }

    /// `σ` sampled at `steps + 1` evenly spaced `k`.
    pub fn scan(&self, k_min: f64, k_max: f64, steps: usize) -> Result<Vec<(f64, f64)>> {
        if !(0.0 < k_min && k_min < k_max) || steps < 2 {
            return Err(Error::Domain(format!("bad scan window [{k_min}, {k_max}] with {steps} steps")));
        }
        let ks: Vec<f64> = (0..=steps).map(|i| k_min + (k_max - k_min) * i as f64 / steps as f64).collect();
        par_map(ks, |k| self.sigma(k).map(|s| (k, s))).into_iter().collect()
    }

    /// Minimises `σ²` on `[lo, hi]` by Brent's method.
    pub fn refine(&self, lo: f64, hi: f64, tol: f64) -> Result<OracleEigen> {
        let mut err = None;
        let k = brent_min(lo, hi, tol, |k| match self.sigma(k) {
            Ok(s) => s * s,
            Err(e) => {
                err.get_or_insert(e);
                f64::INFINITY
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let (sigma, residual) = self.decompose(k, true)?;
        Ok(OracleEigen { k, energy: k * k, sigma, residual: residual.unwrap_or(f64::INFINITY) })
    }

    /// Refined minima of `σ` in `[k_min, k_max]` that pass the residual test.
    pub fn eigenvalues(&self, k_min: f64, k_max: f64, steps: usize, config: &CollocationConfig) -> Result<OracleResult> {
        let curve = self.scan(k_min, k_max, steps)?;
        let mut eigen: Vec<OracleEigen> = Vec::new();
        for i in 1..curve.len() - 1 {
            if curve[i].1 < curve[i - 1].1 && curve[i].1 <= curve[i + 1].1 {
                let e = self.refine(curve[i - 1].0, curve[i + 1].0, config.refine_tol)?;
                let dup = eigen.iter().any(|f| (f.k - e.k).abs() < 10.0 * config.refine_tol.max(1e-12));
                if e.residual <= config.accept_residual && !dup {
                    eigen.push(e);
                }
            }
        }
        Ok(OracleResult { sector: self.sector, eigen, sigma_curve: curve })
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Unit vectors `r̂, θ̂, φ̂` at `(θ, φ)`.
fn frame(t: f64, p: f64) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let (st, ct) = t.sin_cos();
    let (sp, cp) = p.sin_cos();
    ([st * cp, st * sp, ct], [ct * cp, ct * sp, -st], [-sp, cp, 0.0])
}

fn random_direction(rng: &mut ChaCha8Rng, sector: &Sector) -> (f64, f64) {
    let c: f64 = rng.random_range(-1.0..1.0);
    let t = c.acos();
    let p = match sector {
        Sector::Full => rng.random_range(0.0..2.0 * PI),
        Sector::Azimuthal { .. } => 0.0,
        Sector::Cubic => rng.random_range(0.0..FRAC_PI_4),
    };
    (t, p)
}

/// Boundary collocation directions: Gauss–Legendre in `cos θ`, midpoints in
/// `φ`, restricted to the sector's part of the sphere.
fn boundary_directions(sector: &Sector, target: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    match *sector {
        Sector::Full => {
            let nt = ((target as f64 / 2.0).sqrt().ceil() as usize).max(2);
            let np = 2 * nt;
            let (x, _) = gauss_legendre(nt);
            for &c in &x {
                for j in 0..np {
                    out.push((c.acos(), 2.0 * PI * (j as f64 + 0.5) / np as f64));
                }
            }
        }
        Sector::Azimuthal { parity, .. } => {
            let nt = if parity.is_some() { 2 * target } else { target };
            let (x, _) = gauss_legendre(nt.max(2));
            out.extend(x.iter().map(|c| (c.acos(), 0.0)).filter(|&(t, p)| sector.contains(t, p)));
        }
        Sector::Cubic => {
            // the kept wedge is a third of the θ < π/2, φ < π/4 patch
            let n = ((3.0 * target as f64).sqrt().ceil() as usize).max(2);
            let (x, _) = gauss_legendre(2 * n);
            for &c in x.iter().filter(|c| **c > 0.0) {
                for j in 0..n {
                    let d = (c.acos(), FRAC_PI_4 * (j as f64 + 0.5) / n as f64);
                    if sector.contains(d.0, d.1) {
                        out.push(d);
                    }
                }
            }
        }
    }
    out
}

/// Brent's parabolic-interpolation minimiser on `[a, b]`.
fn brent_min(mut a: f64, mut b: f64, tol: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    const GOLD: f64 = 0.381_966_011_250_105;
    let mut x = a + GOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let tol1 = tol + 1e-15 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    x
}

/// `σ(k)` for one shape, boundary condition and sector.
pub fn sigma_min(shape: &BoundaryShape, bc: BoundaryCondition, sector: Sector, k: f64, config: &CollocationConfig) -> Result<f64> {
    Collocation::new(shape, bc, sector, config)?.sigma(k)
}

/// All eigenvalues of a sector within `config.k_scan`.
pub fn find_eigenvalues(shape: &BoundaryShape, bc: BoundaryCondition, sector: Sector, config: &CollocationConfig) -> Result<OracleResult> {
    let (k_min, k_max, steps) = config.k_scan;
    Collocation::new(shape, bc, sector, config)?.eigenvalues(k_min, k_max, steps, config)
}

/// The eigenvalue closest to `k_guess` within `k_guess ± half_width`.
pub fn nearest_eigenvalue(
    shape: &BoundaryShape,
    bc: BoundaryCondition,
    sector: Sector,
    k_guess: f64,
    half_width: f64,
    config: &CollocationConfig,
) -> Result<OracleEigen> {
    let (k_min, k_max) = ((k_guess - half_width).max(1e-3), k_guess + half_width);
    let col = Collocation::new(shape, bc, sector, config)?;
    let steps = config.k_scan.2.clamp(8, 24);
    let found = col.eigenvalues(k_min, k_max, steps, config)?;
    found
        .eigen
        .into_iter()
        .min_by(|a, b| (a.k - k_guess).abs().total_cmp(&(b.k - k_guess).abs()))
        .ok_or(Error::NotFound { k_min, k_max })
}
