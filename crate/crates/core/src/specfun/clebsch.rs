//! Clebsch–Gordan coefficients `⟨j1 j2 m1 m2 | j m⟩` for integer angular
//! momenta, evaluated exactly.
//!
//! The Racah sum is accumulated as an exact rational; the square of the
//! coefficient is formed exactly and only the final square root is taken in
//! floating point. Results are memoised.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Key = (i32, i32, i32, i32, i32, i32);

fn cache() -> &'static RwLock<HashMap<Key, f64>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn factorials() -> &'static RwLock<Vec<BigInt>> {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

fn factorial(n: i64) -> BigInt {
    let n = n as usize;
    {
        let table = factorials().read().expect("factorial table poisoned");
        if let Some(f) = table.get(n) {
            return f.clone();
        }
    }
    let mut table = factorials().write().expect("factorial table poisoned");
    while table.len() <= n {
        let next = table.last().expect("seeded with 0!") * BigInt::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// `⟨j1 j2 m1 m2 | j m⟩`.
///
/// Returns 0 when `m != m1 + m2`, when the triangle rule fails or when a
/// projection exceeds its angular momentum. Negative angular momenta are a
/// domain error.
pub fn clebsch_gordan(j1: i64, j2: i64, m1: i64, m2: i64, j: i64, m: i64) -> Result<f64> {
    if j1 < 0 || j2 < 0 || j < 0 {
        return Err(Error::Domain(format!(
            "angular momenta must be non-negative: ({j1}, {j2}, {j})"
        )));
    }
    Ok(cg(j1, j2, m1, m2, j, m))
}

/// Unchecked (but total) variant of [`clebsch_gordan`] for non-negative `j`s.
pub fn cg(j1: i64, j2: i64, m1: i64, m2: i64, j: i64, m: i64) -> f64 {
    if m != m1 + m2
        || m1.abs() > j1
        || m2.abs() > j2
        || m.abs() > j
        || j < (j1 - j2).abs()
        || j > j1 + j2
    {
        return 0.0;
    }
    let key: Key = (j1 as i32, j2 as i32, m1 as i32, m2 as i32, j as i32, m as i32);
    if let Some(v) = cache().read().expect("cg cache poisoned").get(&key) {
        return *v;
    }
    let v = racah_exact(j1, j2, m1, m2, j, m);
    cache().write().expect("cg cache poisoned").insert(key, v);
    v
}

fn racah_exact(j1: i64, j2: i64, m1: i64, m2: i64, j: i64, m: i64) -> f64 {
    let k_min = 0.max(j2 - j - m1).max(j1 + m2 - j);
    let k_max = (j1 + j2 - j).min(j1 - m1).min(j2 + m2);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(j1 + j2 - j - k)
            * factorial(j1 - m1 - k)
            * factorial(j2 + m2 - k)
            * factorial(j - j2 + m1 + k)
            * factorial(j - j1 - m2 + k);
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        sum += BigRational::new(sign, denom);
    }
    if sum.is_zero() {
        return 0.0;
    }
    let prefactor = BigRational::new(
        BigInt::from(2 * j + 1)
            * factorial(j1 + j2 - j)
            * factorial(j1 - j2 + j)
            * factorial(-j1 + j2 + j)
            * factorial(j + m)
            * factorial(j - m)
            * factorial(j1 - m1)
            * factorial(j1 + m1)
            * factorial(j2 - m2)
            * factorial(j2 + m2),
        factorial(j1 + j2 + j + 1),
    );
    let square = prefactor * &sum * &sum;
    let magnitude = square.to_f64().expect("finite rational").sqrt();
    if sum.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}
