//! Scalar root finding and one-dimensional maximization.

use crate::error::{EvacError, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Bisection on `[lo, hi]` for a root of `f`.
///
/// Stops when the bracket is narrower than `x_tol` or `|f(mid)| <= f_tol`.
/// Returns the final `(root, lo, hi)`.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, x_tol: f64, f_tol: f64) -> Result<(f64, f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok((lo, lo, lo));
    }
    if f_hi == 0.0 {
        return Ok((hi, hi, hi));
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(EvacError::Bracket { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid == lo || mid == hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid.abs() <= f_tol {
            return Ok((mid, lo, hi));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), lo, hi))
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
///
/// Every evaluated point competes for the result, so the returned value is the
/// best sample seen even when `f` is not unimodal on the bracket.
pub fn golden_maximize<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut best = (a, f(a));
    let consider = |x: f64, v: f64, best: &mut (f64, f64)| {
        if v > best.1 {
            *best = (x, v);
        }
    };
    let fb = f(b);
    consider(b, fb, &mut best);

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    consider(x1, f1, &mut best);
    consider(x2, f2, &mut best);

    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
            consider(x1, f1, &mut best);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
            consider(x2, f2, &mut best);
        }
        if x1 >= x2 {
            break;
        }
    }
    best
}

/// `lo, lo + step, ...` strictly below `hi` (when `open`) or up to `hi`.
///
/// Points are computed as `lo + i * step` so no error accumulates.
pub fn grid(lo: f64, hi: f64, step: f64, include_end: bool) -> Vec<f64> {
    debug_assert!(step > 0.0);
    let mut out = Vec::new();
    let mut i = 0usize;
    loop {
        let x = lo + i as f64 * step;
        if x > hi || (!include_end && x >= hi) {
            break;
        }
        out.push(x);
        i += 1;
    }
    if include_end && out.last().map_or(true, |&x| hi - x > 1e-12) {
        out.push(hi);
    }
    out
}

/// Indices of the local maxima of `values`, best first. Ties keep lower indices first.
pub(crate) fn local_maxima(values: &[f64], circular: bool) -> Vec<usize> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = if i > 0 {
                Some(values[i - 1])
            } else if circular && n > 1 {
                Some(values[n - 1])
            } else {
                None
            };
            let right = if i + 1 < n {
                Some(values[i + 1])
            } else if circular && n > 1 {
                Some(values[0])
            } else {
                None
            };
            left.map_or(true, |l| values[i] >= l) && right.map_or(true, |r| values[i] >= r)
        })
        .collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    idx
}
