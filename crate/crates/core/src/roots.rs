//! Bracketing root finders used for crossing times and the critical
//! amplitude.

use crate::error::{Error, Result};

/// Bisection on `[lo, hi]` until the bracket is narrower than `tol`.
///
/// `f(lo)` and `f(hi)` must not share a strict sign. Returns the midpoint
/// of the final bracket, or an exact zero if one is hit.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { upper: hi });
    }
    // 200 halvings exhaust any f64 interval.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Brackets of strict sign changes of sampled values.
///
/// Exact zeros are skipped so that a margin that starts at zero (as the
/// g² criteria do at x = 0) does not register a crossing; a zero between
/// opposite signs still yields one bracket.
pub fn sign_change_brackets(xs: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    let mut brackets = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (&x, &v) in xs.iter().zip(values) {
        if v == 0.0 || v.is_nan() {
            continue;
        }
        if let Some((lx, lv)) = last {
            if lv.signum() != v.signum() {
                brackets.push((lx, x));
            }
        }
        last = Some((x, v));
    }
    brackets
}

/// `n` evenly spaced points on `[0, x_max]`, both ends included.
pub fn uniform_grid(x_max: f64, n: usize) -> Vec<f64> {
    let last = (n - 1).max(1) as f64;
    (0..n).map(|i| x_max * i as f64 / last).collect()
}
