//! Zeros of `j_l` (nodes, `β_{n,l}`) and of `j_l'` (derivative nodes,
//! `α_{n,l}`).
//!
//! Roots are bracketed by a sign-change scan, bisected to an interval below
//! `1e-13` and polished with Newton steps. Every root ever requested is kept
//! in a process-wide cache keyed by `(kind, l)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::bessel::sph_jn_derivs;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZeroKind {
    /// Zeros of `j_l` (Dirichlet spectrum).
    Node,
    /// Non-trivial zeros of `j_l'` (Neumann spectrum). The root at `x = 0`
    /// of `j_0'` is excluded.
    DerivNode,
}

const SCAN_STEP: f64 = 0.1;
const BRACKET_TOL: f64 = 1e-13;

type Cache = RwLock<HashMap<(ZeroKind, usize), Vec<f64>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `n`-th (1-based) positive zero of `j_l` or `j_l'`.
pub fn bessel_zero(kind: ZeroKind, n: usize, l: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("zero index n is 1-based".into()));
    }
    if let Some(z) = cache()
        .read()
        .expect("zero cache poisoned")
        .get(&(kind, l))
        .and_then(|zs| zs.get(n - 1))
    {
        return Ok(*z);
    }
    let zeros = first_zeros(kind, l, n);
    let z = zeros[n - 1];
    let mut guard = cache().write().expect("zero cache poisoned");
    let entry = guard.entry((kind, l)).or_default();
    if entry.len() < zeros.len() {
        *entry = zeros;
    }
    Ok(z)
}

fn eval(kind: ZeroKind, l: usize, x: f64) -> (f64, f64) {
    let d = sph_jn_derivs(l, x);
    match kind {
        ZeroKind::Node => (d[0], d[1]),
        ZeroKind::DerivNode => (d[1], d[2]),
    }
}

fn first_zeros(kind: ZeroKind, l: usize, count: usize) -> Vec<f64> {
    let mut zeros = Vec::with_capacity(count);
    // j_l and j_l' keep one sign on (0, l]: the first zeros lie beyond l.
    let mut a = (0.9 * l as f64).max(0.5);
    let mut fa = eval(kind, l, a).0;
    while zeros.len() < count {
        let b = a + SCAN_STEP;
        let fb = eval(kind, l, b).0;
        if fa == 0.0 {
            zeros.push(a);
        } else if fa * fb < 0.0 {
            zeros.push(refine(kind, l, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    zeros
}

fn refine(kind: ZeroKind, l: usize, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > BRACKET_TOL {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = eval(kind, l, mid).0;
        if fm == 0.0 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..3 {
        let (f, df) = eval(kind, l, x);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if (next - x).abs() > 1e-10 || eval(kind, l, next).0.abs() >= f.abs() {
            break;
        }
        x = next;
    }
    x
}

/// A table of zeros for one kind, `(n, l) -> zero` with `n >= 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroTable {
    pub kind: ZeroKind,
    pub entries: BTreeMap<(usize, usize), f64>,
}

impl ZeroTable {
    /// All zeros with `1 <= n <= n_max` and `0 <= l <= l_max`.
    pub fn build(kind: ZeroKind, n_max: usize, l_max: usize) -> Self {
        let mut entries = BTreeMap::new();
        for l in 0..=l_max {
            for n in 1..=n_max {
                entries.insert((n, l), bessel_zero(kind, n, l).expect("n >= 1"));
            }
        }
        Self { kind, entries }
    }

    pub fn get(&self, n: usize, l: usize) -> Option<f64> {
        self.entries.get(&(n, l)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn j0_nodes_are_multiples_of_pi() {
        for n in 1..=10 {
            let z = bessel_zero(ZeroKind::Node, n, 0).unwrap();
            assert!((z - n as f64 * PI).abs() < 1e-12, "n = {n}: {z}");
        }
    }

    #[test]
    fn first_derivative_zero_of_j1() {
        let z = bessel_zero(ZeroKind::DerivNode, 1, 1).unwrap();
        assert!((z - 2.081576).abs() < 1e-6);
        assert!((z * z - 4.3330).abs() < 5e-5);
    }

    #[test]
    fn first_node_of_j1_solves_tan_x_eq_x() {
        let z = bessel_zero(ZeroKind::Node, 1, 1).unwrap();
        assert!((z.tan() - z).abs() < 1e-9);
        assert!((z - 4.493409).abs() < 1e-6);
    }

    #[test]
    fn neumann_l0_skips_trivial_root() {
        let z = bessel_zero(ZeroKind::DerivNode, 1, 0).unwrap();
        assert!((z * z - 20.1907).abs() < 5e-5);
    }

    #[test]
    fn residuals_and_ordering() {
        for kind in [ZeroKind::Node, ZeroKind::DerivNode] {
            for l in 0..=12 {
                let mut prev = 0.0;
                for n in 1..=8 {
                    let z = bessel_zero(kind, n, l).unwrap();
                    let (f, _) = eval(kind, l, z);
                    assert!(f.abs() < 1e-12, "{kind:?} n={n} l={l} f={f:e}");
                    assert!(z > prev);
                    prev = z;
                }
            }
        }
    }

    #[test]
    fn zero_index_is_rejected() {
        assert!(bessel_zero(ZeroKind::Node, 0, 1).is_err());
    }

    #[test]
    fn table_matches_direct_calls() {
        let t = ZeroTable::build(ZeroKind::DerivNode, 3, 2);
        assert_eq!(t.entries.len(), 9);
        assert_eq!(t.get(2, 1), Some(bessel_zero(ZeroKind::DerivNode, 2, 1).unwrap()));
        assert_eq!(t.get(4, 1), None);
    }
}
