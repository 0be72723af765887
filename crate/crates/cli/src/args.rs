use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use helmholtz3d::BoundaryCondition;

#[derive(Debug, Parser)]
#[command(
    name = "helmholtz3d",
    version,
    about = "Helmholtz eigenvalues of near-spherical cavities by boundary perturbation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sphere eigenvalues for both boundary conditions.
    Table1(Options),
    /// Corrected spectrum of one shape.
    Spectrum(Options),
    /// Corrected spectrum over a range of the shape parameter.
    Sweep(Options),
    /// Corrected spectrum next to point-matching eigenvalues.
    Compare(Options),
    /// Spherical-harmonic coefficients of the boundary.
    Expand(Options),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table1(_) => "table1",
            Command::Spectrum(_) => "spectrum",
            Command::Sweep(_) => "sweep",
            Command::Compare(_) => "compare",
            Command::Expand(_) => "expand",
        }
    }

    pub fn options(&self) -> &Options {
        match self {
            Command::Table1(o) | Command::Spectrum(o) | Command::Sweep(o) | Command::Compare(o) | Command::Expand(o) => o,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    Sphere,
    Spheroid,
    Superegg,
    Superquadric,
    Tabulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, value_enum, default_value = "sphere")]
    pub shape: ShapeKind,
    /// Spheroid r_c/r_a (volume normalised); superegg c/a.
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Superegg n or superquadric t.
    #[arg(long)]
    pub exponent: Option<f64>,
    #[arg(long, default_value = "dirichlet", value_parser = parse_bc)]
    pub bc: BoundaryCondition,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub order: u8,
    /// Number of sphere levels (n, l) to follow.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Highest degree of the boundary expansion.
    #[arg(long, default_value_t = helmholtz3d::geometry::DEFAULT_A_MAX)]
    pub amax: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Also solve each level by point matching.
    #[arg(long)]
    pub oracle: bool,
    /// Parameter range `from:to:steps` (steps intervals, steps + 1 points).
    #[arg(long)]
    pub sweep: Option<SweepRange>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV with header `theta,phi,r` (radians, θ outer loop).
    #[arg(long)]
    pub tabulated_file: Option<PathBuf>,
}

fn parse_bc(s: &str) -> Result<BoundaryCondition, String> {
    BoundaryCondition::from_str(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn values(&self) -> Vec<f64> {
        (0..=self.steps)
            .map(|i| self.from + (self.to - self.from) * i as f64 / self.steps as f64)
            .collect()
    }
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected from:to:steps, got '{s}'"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad number '{p}': {e}"));
        let (from, to) = (num(parts[0])?, num(parts[1])?);
        let steps: usize = parts[2].trim().parse().map_err(|e| format!("bad step count '{}': {e}", parts[2]))?;
        if steps == 0 || !from.is_finite() || !to.is_finite() {
            return Err(format!("sweep needs finite bounds and at least one step, got '{s}'"));
        }
        Ok(Self { from, to, steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_range_parsing() {
        let r: SweepRange = "0.75:1.25:20".parse().unwrap();
        let v = r.values();
        assert_eq!(v.len(), 21);
        assert!((v[10] - 1.0).abs() < 1e-15);
        assert!("1:2".parse::<SweepRange>().is_err());
        assert!("1:2:0".parse::<SweepRange>().is_err());
        assert!("a:2:3".parse::<SweepRange>().is_err());
    }
}
