//! Expansion of pointwise products of two or three spherical harmonics in the
//! `Y_l^m` basis.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::clebsch::cg;
use super::harmonics::AngularIndex;
use crate::error::{Error, Result};

/// Coefficient of `Y_l^{m1+m2}` in `Y_{l1}^{m1} Y_{l2}^{m2}`:
/// `sqrt((2l1+1)(2l2+1) / (4π(2l+1))) ⟨l1 l2 0 0|l 0⟩ ⟨l1 l2 m1 m2|l m1+m2⟩`.
///
/// Equivalently the integral `∫ conj(Y_l^{m1+m2}) Y_{l1}^{m1} Y_{l2}^{m2} dΩ`.
pub fn product_coefficient(l1: i64, m1: i64, l2: i64, m2: i64, l: i64) -> f64 {
    let m = m1 + m2;
    if l < (l1 - l2).abs() || l > l1 + l2 || m.abs() > l || (l1 + l2 + l) % 2 != 0 {
        return 0.0;
    }
    let norm = (((2 * l1 + 1) * (2 * l2 + 1)) as f64 / (4.0 * PI * (2 * l + 1) as f64)).sqrt();
    norm * cg(l1, l2, 0, 0, l, 0) * cg(l1, l2, m1, m2, l, m)
}

/// Expands `Π Y_{l_i}^{m_i}` (up to three factors) as `Σ w_{l} Y_l^M` with
/// `M = Σ m_i`. Terms are returned ordered by `l`, zero weights dropped.
pub fn product_expand(terms: &[AngularIndex]) -> Result<Vec<(AngularIndex, f64)>> {
    match terms {
        [] => Err(Error::Domain("empty product".into())),
        [single] => Ok(vec![(*single, 1.0)]),
        [a, b] => Ok(collect(pair(a, b))),
        [a, b, c] => {
            let mut acc: BTreeMap<AngularIndex, f64> = BTreeMap::new();
            for (k1, w1) in pair(a, b) {
                for (k2, w2) in pair(&k1, c) {
                    *acc.entry(k2).or_insert(0.0) += w1 * w2;
                }
            }
            Ok(collect(acc))
        }
        _ => Err(Error::Unsupported(format!(
            "products of {} harmonics (at most 3 supported)",
            terms.len()
        ))),
    }
}

fn pair(a: &AngularIndex, b: &AngularIndex) -> BTreeMap<AngularIndex, f64> {
    let (l1, m1, l2, m2) = (a.l as i64, a.m as i64, b.l as i64, b.m as i64);
    let m = m1 + m2;
    let lo = (l1 - l2).abs().max(m.abs());
    let mut out = BTreeMap::new();
    for l in lo..=l1 + l2 {
        let w = product_coefficient(l1, m1, l2, m2, l);
        if w != 0.0 {
            out.insert(AngularIndex { l: l as u32, m: m as i32 }, w);
        }
    }
    out
}

fn collect(map: BTreeMap<AngularIndex, f64>) -> Vec<(AngularIndex, f64)> {
    map.into_iter().filter(|(_, w)| *w != 0.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y00_times_anything() {
        let t = [AngularIndex { l: 0, m: 0 }, AngularIndex { l: 3, m: -2 }];
        let e = product_expand(&t).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].0, AngularIndex { l: 3, m: -2 });
        assert!((e[0].1 - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn too_many_factors() {
        let t = [AngularIndex { l: 1, m: 0 }; 4];
        assert!(matches!(product_expand(&t), Err(Error::Unsupported(_))));
        assert!(product_expand(&[]).is_err());
    }
}
