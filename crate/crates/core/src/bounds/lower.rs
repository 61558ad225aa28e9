use std::f64::consts::{PI, TAU};

use super::{c_4_84, c_4_97, S_MAX};
use crate::{EvacError, Result};

/// Worst case when only Slow explores.
pub fn ses_worst_case() -> f64 {
    1.0 + TAU
}

/// Lower bound for strategies in which only Fast explores.
pub fn lb_fes(s: f64) -> Result<f64> {
    if !(s >= 1.0 && s.is_finite()) {
        return Err(EvacError::domain("s", s, "[1, ∞)"));
    }
    if s <= 2.0 {
        return Ok((1.0 + TAU) / s);
    }
    Ok(fes_tail(s))
}

/// `(1 + a)/s + sin(a/2)` at its maximizer `a = 2 arccos(-2/s)`.
fn fes_tail(s: f64) -> f64 {
    (1.0 + 2.0 * (-2.0 / s).acos()) / s + (1.0 - 4.0 / (s * s)).sqrt()
}

/// Lower bound for strategies in which both robots explore.
pub fn lb_bes_original(s: f64) -> Result<f64> {
    if !(1.0..S_MAX).contains(&s) {
        return Err(EvacError::domain("s", s, "[1, 2π + 1)"));
    }
    let p = s + 1.0;
    if s < 2.0 {
        let c = s / p;
        return Ok(1.0 + (2.0 / s) * (1.0 - c * c).sqrt() + (-s + 2.0 * (-c).acos() + 1.0) / p);
    }
    if s <= c_4_84() {
        let c = 2.0 / p;
        return Ok(1.0 + (1.0 - c * c).sqrt() + (-s + 2.0 * (-c).acos() + 1.0) / p);
    }
    Ok(1.0 + ((s - 1.0) / 2.0).sin())
}

/// Bound obtained when Fast alone must sweep a half circle.
pub fn lb_bes_antipodal(s: f64) -> Result<f64> {
    if !(s > PI + 1.0 && s.is_finite()) {
        return Err(EvacError::domain("s", s, "(π + 1, ∞)"));
    }
    if s < c_4_97() {
        return Ok(1.0 + ((s - 1.0) / 2.0).sin());
    }
    Ok(fes_tail(s))
}
