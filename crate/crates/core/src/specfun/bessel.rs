//! Spherical Bessel functions of the first kind, `j_l(x)`, and their first
//! three derivatives.
//!
//! Evaluation strategy:
//! * `x < 1`: power series, for the value and every derivative;
//! * `x >= l` (or `l <= 2`): closed forms for `j_0, j_1` and upward recurrence;
//! * `1 <= x < l`: downward recurrence seeded by the continued fraction for
//!   `j_{l+1}/j_l`, normalised against the closed form of `j_0` or `j_1`.
//!
//! Derivatives for `x >= 1` come from `j_l' = (l/x) j_l - j_{l+1}` and the
//! radial ODE `x² j'' + 2x j' + (x² - l(l+1)) j = 0`.

use crate::error::{Error, Result};

/// Below this argument the power series is used.
const SERIES_LIMIT: f64 = 1.0;

/// Checked entry point: `d^deriv j_l / dx^deriv` at `x`.
///
/// Negative `x` is handled through the parity `j_l(-x) = (-1)^l j_l(x)`.
pub fn spherical_bessel(l: i64, x: f64, deriv: u32) -> Result<f64> {
    if l < 0 {
        return Err(Error::Domain(format!("spherical Bessel order must be >= 0, got {l}")));
    }
    if deriv > 3 {
        return Err(Error::Domain(format!("derivative order must be 0..=3, got {deriv}")));
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("spherical Bessel argument must be finite, got {x}")));
    }
    let l = l as usize;
    let d = deriv as usize;
    if x < 0.0 {
        // d^k/dx^k j_l(-y) picks up (-1)^(l+k).
        let sign = if (l + d) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * sph_jn_derivs(l, -x)[d]);
    }
    Ok(sph_jn_derivs(l, x)[d])
}

/// `j_l(x)` for `x >= 0`.
pub fn sph_jn(l: usize, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        return series(l, x, 0);
    }
    let mut out = Vec::with_capacity(l + 1);
    sph_jn_array_into(l, x, &mut out);
    out[l]
}

/// `[j_l, j_l', j_l'', j_l''']` at `x >= 0`.
pub fn sph_jn_derivs(l: usize, x: f64) -> [f64; 4] {
    if x < SERIES_LIMIT {
        return [series(l, x, 0), series(l, x, 1), series(l, x, 2), series(l, x, 3)];
    }
    let mut buf = Vec::with_capacity(l + 2);
    sph_jn_array_into(l + 1, x, &mut buf);
    derivs_from_pair(l, x, buf[l], buf[l + 1])
}

/// Value and first derivative, `[j_l, j_l']`; cheaper than [`sph_jn_derivs`].
pub fn sph_jn_d1(l: usize, x: f64) -> [f64; 2] {
    if x < SERIES_LIMIT {
        return [series(l, x, 0), series(l, x, 1)];
    }
    let mut buf = Vec::with_capacity(l + 2);
    sph_jn_array_into(l + 1, x, &mut buf);
    let j = buf[l];
    [j, l as f64 / x * j - buf[l + 1]]
}

/// `j_0(x), ..., j_lmax(x)` for `x >= 0`.
pub fn sph_jn_array(lmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(lmax + 1);
    sph_jn_array_into(lmax, x, &mut out);
    out
}

/// Values and first derivatives of `j_0..=j_lmax` at `x >= 0`.
pub fn sph_jn_array_d1(lmax: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    if x < SERIES_LIMIT {
        let v = (0..=lmax).map(|l| series(l, x, 0)).collect();
        let d = (0..=lmax).map(|l| series(l, x, 1)).collect();
        return (v, d);
    }
    let mut buf = Vec::with_capacity(lmax + 2);
    sph_jn_array_into(lmax + 1, x, &mut buf);
    let d = (0..=lmax).map(|l| l as f64 / x * buf[l] - buf[l + 1]).collect();
    buf.truncate(lmax + 1);
    (buf, d)
}

fn derivs_from_pair(l: usize, x: f64, j: f64, jn: f64) -> [f64; 4] {
    let ll = (l * (l + 1)) as f64;
    let d1 = l as f64 / x * j - jn;
    let d2 = -2.0 / x * d1 - (1.0 - ll / (x * x)) * j;
    let d3 = 2.0 / (x * x) * d1 - 2.0 / x * d2 - 2.0 * ll / (x * x * x) * j
        - (1.0 - ll / (x * x)) * d1;
    [j, d1, d2, d3]
}

/// Power series `j_l(x) = x^l Σ_k (-x²/2)^k / (k! (2l+2k+1)!!)`,
/// differentiated term by term `deriv` times.
fn series(l: usize, x: f64, deriv: usize) -> f64 {
    // Leading coefficient 1/(2l+1)!!.
    let mut c = 1.0;
    for i in 0..=l {
        c /= (2 * i + 1) as f64;
    }
    let mut sum = 0.0;
    let mut k = 0usize;
    loop {
        let power = l + 2 * k;
        if power >= deriv {
            let mut falling = 1.0;
            for i in 0..deriv {
                falling *= (power - i) as f64;
            }
            let term = c * falling * x.powi((power - deriv) as i32);
            sum += term;
            if k > 0 && term.abs() <= 1e-17 * sum.abs().max(f64::MIN_POSITIVE) {
                break;
            }
            if term == 0.0 && power > deriv {
                break;
            }
        }
        k += 1;
        if k > 60 {
            break;
        }
        // c_k = c_{k-1} * (-1/2) / (k (2l+2k+1))
        c *= -0.5 / (k as f64 * (2 * (l + k) + 1) as f64);
    }
    sum
}

fn sph_jn_array_into(lmax: usize, x: f64, out: &mut Vec<f64>) {
    out.clear();
    if x == 0.0 {
        out.push(1.0);
        out.extend(std::iter::repeat_n(0.0, lmax));
        return;
    }
    if x < SERIES_LIMIT {
        out.extend((0..=lmax).map(|l| series(l, x, 0)));
        return;
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    if lmax <= 1 || (lmax as f64) <= x {
        out.push(j0);
        if lmax >= 1 {
            out.push(j1);
        }
        for l in 1..lmax {
            let next = (2 * l + 1) as f64 / x * out[l] - out[l - 1];
            out.push(next);
        }
        return;
    }
    // Ratio r_n = j_n / j_{n-1} = x / (2n + 1 - x r_{n+1}), iterated down from
    // well above the turning point where r_n ~ x/(2n+1).
    let start = lmax + 1 + 40 + x as usize;
    let mut ratio = x / (2 * start + 1) as f64;
    for n in (lmax + 1..start).rev() {
        ratio = x / ((2 * n + 1) as f64 - x * ratio);
    }
    // ratio is now r_{lmax+1}
    out.resize(lmax + 2, 0.0);
    out[lmax + 1] = ratio;
    out[lmax] = 1.0;
    for n in (1..=lmax).rev() {
        let prev = (2 * n + 1) as f64 / x * out[n] - out[n + 1];
        out[n - 1] = prev;
        if prev.abs() > 1e250 {
            for v in out[n - 1..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let scale = if j0.abs() >= j1.abs() { j0 / out[0] } else { j1 / out[1] };
    out.truncate(lmax + 1);
    for v in out.iter_mut() {
        *v *= scale;
    }
}
