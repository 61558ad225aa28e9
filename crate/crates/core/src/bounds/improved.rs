use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::S_MAX;
use crate::numeric::grid;
use crate::{EvacError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImprovedBesExpr {
    /// Exit on the unexplored chord endpoints or near its midpoint.
    Eq1,
    /// Exit on the last boundary point explored.
    Eq2,
}

/// Witnesses of the improved BES bound.
///
/// `y_star` and `k_star` maximize and minimize the first expression; `u` and
/// `lambda` are the unexplored length and the center-to-midpoint distance there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImprovedBesEvaluation {
    pub s: f64,
    pub y_star: f64,
    pub k_star: f64,
    pub u: f64,
    pub lambda: f64,
    pub value: f64,
    pub expr_used: ImprovedBesExpr,
    pub eq1_value: f64,
    pub eq2_value: f64,
}

/// Half of the unexplored arc's central angle.
fn half_angle(s: f64, y: f64, k: f64) -> f64 {
    (s - 1.0 + (s + 1.0) * y - k) / 2.0
}

/// The two candidate extra times at `(y, k)`: Fast crossing the chord, and the
/// farther robot reaching an endpoint from near the chord midpoint.
fn inner_terms(s: f64, y: f64, k: f64) -> (f64, f64) {
    let w = half_angle(s, y, k);
    let (sin, cos) = w.sin_cos();
    let lift = (1.0 - cos.abs() - k).max(0.0);
    ((2.0 / s) * sin, (sin * sin + lift * lift).sqrt())
}

#[derive(Clone, Copy)]
struct RowBest {
    y: f64,
    value: f64,
    k_a: f64,
    k_b: f64,
    use_b: bool,
}

fn row(s: f64, y: f64, k_step: f64) -> RowBest {
    let k_max = y.min((s + 1.0) * y + s - 1.0 - PI).max(0.0);
    let mut ks = grid(0.0, k_max, k_step, true);
    let lambda0 = half_angle(s, y, 0.0).cos().abs();
    let analytic = (1.0 - lambda0).max(0.0);
    if analytic <= k_max {
        ks.push(analytic);
    }
    let (mut min_a, mut k_a) = (f64::INFINITY, 0.0);
    let (mut min_b, mut k_b) = (f64::INFINITY, 0.0);
    for &k in &ks {
        let (a, b) = inner_terms(s, y, k);
        if a < min_a || (a == min_a && k < k_a) {
            (min_a, k_a) = (a, k);
        }
        if b < min_b || (b == min_b && k < k_b) {
            (min_b, k_b) = (b, k);
        }
    }
    let use_b = min_b > min_a;
    RowBest {
        y,
        value: 1.0 + y + min_a.max(min_b),
        k_a,
        k_b,
        use_b,
    }
}

/// Improved BES lower bound by grid search over the Slow arc `y` and the
/// explored overlap `k`.
pub fn lb_bes_improved(s: f64, y_step: f64, k_step: f64) -> Result<ImprovedBesEvaluation> {
    if !(1.0..S_MAX).contains(&s) {
        return Err(EvacError::domain("s", s, "[1, 2π + 1)"));
    }
    if !(y_step > 0.0) {
        return Err(EvacError::domain("y_step", y_step, "(0, ∞)"));
    }
    if !(k_step > 0.0) {
        return Err(EvacError::domain("k_step", k_step, "(0, ∞)"));
    }
    let y_min = ((PI - s + 1.0) / (s + 1.0)).max(0.0);
    let y_max = (TAU - s + 1.0) / (s + 1.0);
    let rows: Vec<RowBest> = grid(y_min, y_max, y_step, false)
        .into_par_iter()
        .map(|y| row(s, y, k_step))
        .collect();
    let best = rows
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .unwrap_or_else(|| row(s, y_min, k_step));

    let k_star = if best.use_b { best.k_b } else { best.k_a };
    let eq1 = best.value;
    let eq2 = 1.0 + (TAU - s + 1.0) / (s + 1.0);
    Ok(ImprovedBesEvaluation {
        s,
        y_star: best.y,
        k_star,
        u: TAU - s + 1.0 - (s + 1.0) * best.y + k_star,
        lambda: half_angle(s, best.y, k_star).cos().abs(),
        value: eq1.max(eq2),
        expr_used: if eq1 >= eq2 {
            ImprovedBesExpr::Eq1
        } else {
            ImprovedBesExpr::Eq2
        },
        eq1_value: eq1,
        eq2_value: eq2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{lb_bes_original, DEFAULT_K_STEP, DEFAULT_Y_STEP};

    fn eval(s: f64) -> ImprovedBesEvaluation {
        lb_bes_improved(s, DEFAULT_Y_STEP, DEFAULT_K_STEP).unwrap()
    }

    #[test]
    fn dominates_original_bound() {
        for s in [1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 7.0] {
            let e = eval(s);
            assert!(e.value >= lb_bes_original(s).unwrap() - 1e-6, "s = {s}");
            assert_eq!(e.k_star, 0.0, "s = {s}");
            assert!(e.u > 0.0 && e.u <= PI + 1e-9);
            assert!(e.k_star <= e.y_star);
        }
    }

    #[test]
    fn eq2_is_the_meeting_time() {
        let e = eval(1.0);
        assert!((e.eq2_value - (1.0 + PI)).abs() < 1e-12);
        assert_eq!(e.expr_used, ImprovedBesExpr::Eq1);
        assert!((e.value - lb_bes_original(1.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn lift_vanishes_past_midpoint_gap() {
        // once k exceeds 1 - λ the second term is the half chord alone
        let (s, y) = (3.0, 0.5);
        for k in [0.2, 0.35, 0.5] {
            let w = half_angle(s, y, k);
            if 1.0 - w.cos().abs() < k {
                let (_, b) = inner_terms(s, y, k);
                assert!((b - w.sin().abs()).abs() < 1e-15);
            }
        }
        // and at k = 0 the two terms reproduce the original maximand
        let w = half_angle(s, y, 0.0);
        let (a, b) = inner_terms(s, y, 0.0);
        assert!(a.max(b) >= (2.0 / s).max(1.0) * w.sin() - 1e-15);
    }

    #[test]
    fn rejects_bad_steps() {
        assert!(lb_bes_improved(2.0, 0.0, 1e-3).is_err());
        assert!(lb_bes_improved(2.0, 1e-3, -1.0).is_err());
        assert!(lb_bes_improved(S_MAX, 1e-3, 1e-3).is_err());
    }
}
