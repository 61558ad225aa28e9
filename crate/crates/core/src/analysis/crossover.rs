use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{speed_grid, NumericSteps};
use crate::bounds::{lb_bes_improved, lb_fes, ub_bsp, ub_half_chord};
use crate::numeric::bisect;
use crate::strategies::optimize_fast_chord;
use crate::{EvacError, Result};

/// Speed grid of the cached Fast-Chord curve.
pub const FAST_CHORD_CACHE_STEP: f64 = 1e-2;
const CLOSED_FORM_TOL: f64 = 1e-12;
const NUMERIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverResult {
    pub name: String,
    pub s_star: f64,
    /// `|f(s_star) - g(s_star)|`
    pub residual: f64,
    /// Final bisection bracket.
    pub bracket: (f64, f64),
}

/// Bisection for the speed where `f` and `g` cross on `bracket`.
pub fn find_crossover<F, G>(
    name: &str,
    f: F,
    g: G,
    bracket: (f64, f64),
    tol: f64,
) -> Result<CrossoverResult>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let diff = |s: f64| f(s) - g(s);
    let (s_star, lo, hi) = bisect(diff, bracket.0, bracket.1, tol, 0.0)?;
    Ok(CrossoverResult {
        name: name.to_string(),
        s_star,
        residual: (f(s_star) - g(s_star)).abs(),
        bracket: (lo, hi),
    })
}

/// Optimized Fast-Chord worst case on a speed grid, linearly interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FastChordCache {
    pub speeds: Vec<f64>,
    pub values: Vec<f64>,
}

impl FastChordCache {
    pub fn build(s_lo: f64, s_hi: f64, step: f64, steps: &NumericSteps) -> Result<Self> {
        let speeds = speed_grid(s_lo, s_hi, step);
        let values = speeds
            .par_iter()
            .map(|&s| optimize_fast_chord(s, steps.x3_step, steps.time_step).map(|b| b.worst_time))
            .collect::<Result<Vec<_>>>()?;
        Ok(FastChordCache { speeds, values })
    }

    /// Interpolated value; `None` outside the cached range.
    pub fn value(&self, s: f64) -> Option<f64> {
        let first = *self.speeds.first()?;
        let last = *self.speeds.last()?;
        if !(first..=last).contains(&s) {
            return None;
        }
        let i = self.speeds.partition_point(|&x| x <= s);
        if i >= self.speeds.len() {
            return self.values.last().copied();
        }
        let i = i.max(1);
        let (s0, s1) = (self.speeds[i - 1], self.speeds[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        Some(v0 + (v1 - v0) * (s - s0) / (s1 - s0))
    }
}

fn cached(cache: &FastChordCache) -> impl Fn(f64) -> f64 + '_ {
    |s| cache.value(s).unwrap_or(f64::NAN)
}

fn bsp(s: f64) -> f64 {
    ub_bsp(s).unwrap_or(f64::NAN)
}

fn half_chord(s: f64) -> f64 {
    ub_half_chord(s).unwrap_or(f64::NAN)
}

/// All named crossover constants, keyed by name.
pub fn compute_constants(steps: &NumericSteps) -> Result<BTreeMap<String, CrossoverResult>> {
    let low = FastChordCache::build(1.5, 2.0, FAST_CHORD_CACHE_STEP, steps)?;
    let high = FastChordCache::build(2.0, 2.5, FAST_CHORD_CACHE_STEP, steps)?;
    let improved =
        |s: f64| lb_bes_improved(s, steps.y_step, steps.k_step).map_or(f64::NAN, |e| e.value);
    let fes = |s: f64| lb_fes(s).unwrap_or(f64::NAN);

    let results = [
        find_crossover("c_1.71", cached(&low), bsp, (1.5, 2.0), NUMERIC_TOL),
        find_crossover(
            "c_1.86",
            |s| (1.0 + TAU) / s,
            bsp,
            (1.5, 2.0),
            CLOSED_FORM_TOL,
        ),
        find_crossover("c_2.07", cached(&high), half_chord, (2.0, 2.5), NUMERIC_TOL),
        find_crossover("c_2.75", improved, fes, (2.0, 3.5), NUMERIC_TOL),
        // both remaining constants mark where a maximizer reaches a range end
        find_crossover(
            "c_4.84",
            |s| 2.0 * (-2.0 / (s + 1.0)).acos(),
            |s| s - 1.0,
            (4.5, 5.2),
            CLOSED_FORM_TOL,
        ),
        find_crossover(
            "c_4.97",
            |s| 2.0 * (-2.0 / s).acos(),
            |s| s - 1.0,
            (4.5, 5.2),
            CLOSED_FORM_TOL,
        ),
    ];
    let mut out = BTreeMap::new();
    for r in results {
        let r = r?;
        if !r.s_star.is_finite() {
            return Err(EvacError::Bracket {
                lo: r.bracket.0,
                hi: r.bracket.1,
            });
        }
        out.insert(r.name.clone(), r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{c_4_84, c_4_97};

    #[test]
    fn half_chord_meets_bsp() {
        let r = find_crossover(
            "c_1.86",
            |s| (1.0 + TAU) / s,
            bsp,
            (1.5, 2.0),
            CLOSED_FORM_TOL,
        )
        .unwrap();
        assert!((r.s_star - 1.856).abs() < 1e-3);
        assert!(r.residual <= 1e-9);
        assert!(r.bracket.0 <= r.s_star && r.s_star <= r.bracket.1);
    }

    #[test]
    fn no_sign_change_is_an_error() {
        let r = find_crossover("none", |s| s, |s| s - 1.0, (1.0, 2.0), 1e-9);
        assert!(matches!(r, Err(EvacError::Bracket { .. })));
    }

    #[test]
    fn cache_interpolates() {
        let cache = FastChordCache {
            speeds: vec![1.0, 2.0, 3.0],
            values: vec![4.0, 2.0, 1.0],
        };
        assert_eq!(cache.value(1.0), Some(4.0));
        assert_eq!(cache.value(1.5), Some(3.0));
        assert_eq!(cache.value(3.0), Some(1.0));
        assert_eq!(cache.value(3.5), None);
    }

    #[test]
    fn switch_constants_agree_with_bounds() {
        let r = find_crossover(
            "c_4.84",
            |s| 2.0 * (-2.0 / (s + 1.0)).acos(),
            |s| s - 1.0,
            (4.5, 5.2),
            CLOSED_FORM_TOL,
        )
        .unwrap();
        assert!((r.s_star - c_4_84()).abs() < 1e-9);
        assert!((r.s_star - 4.8406).abs() < 1e-3);
        let r = find_crossover(
            "c_4.97",
            |s| 2.0 * (-2.0 / s).acos(),
            |s| s - 1.0,
            (4.5, 5.2),
            CLOSED_FORM_TOL,
        )
        .unwrap();
        assert!((r.s_star - c_4_97()).abs() < 1e-9);
    }
}
