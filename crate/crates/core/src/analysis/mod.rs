//! Overall envelopes, crossover constants and the upper/lower ratio.

mod crossover;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    lb_bes_antipodal, lb_bes_improved, lb_bes_original, lb_fes, ub_bsp, ub_half_chord, BoundFamily,
    BoundValue, DEFAULT_K_STEP, DEFAULT_Y_STEP, S_MAX,
};
use crate::numeric::grid;
use crate::strategies::{optimize_fast_chord, StrategyFamily};
use crate::worstcase::{DEFAULT_GRID_STEP, DEFAULT_REFINE_TOL, DEFAULT_TIME_STEP};
use crate::{EvacError, Result};

pub use crossover::{compute_constants, find_crossover, CrossoverResult, FastChordCache};

/// Discretization used by every numeric bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericSteps {
    pub x3_step: f64,
    pub time_step: f64,
    pub y_step: f64,
    pub k_step: f64,
    pub grid_step: f64,
    pub refine_tol: f64,
}

impl Default for NumericSteps {
    fn default() -> Self {
        NumericSteps {
            x3_step: 1e-2,
            time_step: DEFAULT_TIME_STEP,
            y_step: DEFAULT_Y_STEP,
            k_step: DEFAULT_K_STEP,
            grid_step: DEFAULT_GRID_STEP,
            refine_tol: DEFAULT_REFINE_TOL,
        }
    }
}

fn check_range(s: f64) -> Result<()> {
    if (1.0..S_MAX).contains(&s) {
        Ok(())
    } else {
        Err(EvacError::domain("s", s, "[1, 2π + 1)"))
    }
}

/// Value of one bound family at `s`; `None` outside the family's domain.
pub fn bound_value(
    family: BoundFamily,
    s: f64,
    steps: &NumericSteps,
) -> Result<Option<BoundValue>> {
    let value = match family {
        BoundFamily::Bsp => ub_bsp(s).ok(),
        BoundFamily::HalfChord => ub_half_chord(s).ok(),
        BoundFamily::FastChord if (1.0..S_MAX).contains(&s) => fast_chord_value(s, steps)?,
        BoundFamily::FastChord => None,
        BoundFamily::Fes => lb_fes(s).ok(),
        BoundFamily::BesOriginal => lb_bes_original(s).ok(),
        BoundFamily::BesAntipodal => lb_bes_antipodal(s).ok(),
        BoundFamily::BesImproved => lb_bes_improved(s, steps.y_step, steps.k_step)
            .ok()
            .map(|e| e.value),
        BoundFamily::Ses => Some(crate::bounds::ses_worst_case()),
    };
    Ok(value.map(|v| BoundValue::new(family, s, v)))
}

/// Strongest BES bound, weakened by the FES bound.
pub fn lb_overall(s: f64, steps: &NumericSteps) -> Result<f64> {
    check_range(s)?;
    let improved = lb_bes_improved(s, steps.y_step, steps.k_step)?.value;
    Ok(combine_lower(s, lb_bes_original(s)?, improved, lb_fes(s)?))
}

fn combine_lower(s: f64, original: f64, improved: f64, fes: f64) -> f64 {
    let antipodal = if s > PI + 1.0 {
        lb_bes_antipodal(s).unwrap_or(f64::NEG_INFINITY)
    } else {
        f64::NEG_INFINITY
    };
    original.max(improved).max(antipodal).min(fes)
}

/// Best upper bound and the family attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperChoice {
    pub value: f64,
    pub family: StrategyFamily,
}

/// Smallest of the strategy bounds. Later families in the order BSP,
/// Half-Chord, Fast-Chord win only when better by more than `1e-9`.
pub fn ub_overall(s: f64, steps: &NumericSteps) -> Result<UpperChoice> {
    check_range(s)?;
    Ok(choose_upper(s, fast_chord_value(s, steps)?))
}

/// Optimized Fast-Chord worst case, `None` when no `x3` is feasible.
fn fast_chord_value(s: f64, steps: &NumericSteps) -> Result<Option<f64>> {
    match optimize_fast_chord(s, steps.x3_step, steps.time_step) {
        Ok(best) => Ok(Some(best.worst_time)),
        Err(EvacError::NoFeasibleX3 { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn choose_upper(s: f64, fast_chord: Option<f64>) -> UpperChoice {
    let candidates = [
        (ub_bsp(s).ok(), StrategyFamily::Bsp),
        (ub_half_chord(s).ok(), StrategyFamily::HalfChord),
        (fast_chord, StrategyFamily::FastChord),
    ];
    let mut best: Option<UpperChoice> = None;
    for (value, family) in candidates {
        let Some(value) = value else { continue };
        match best {
            Some(b) if value >= b.value - 1e-9 => {}
            _ => best = Some(UpperChoice { value, family }),
        }
    }
    best.expect("Half-Chord is defined for every s >= 1")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeSample {
    pub s: f64,
    pub lb_overall: f64,
    pub ub_overall: f64,
    pub best_strategy: StrategyFamily,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub samples: Vec<EnvelopeSample>,
}

/// Every bound at one speed, as used for sweep rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsAtSpeed {
    pub s: f64,
    pub ub_bsp: Option<f64>,
    pub ub_half_chord: f64,
    pub ub_fast_chord: Option<f64>,
    pub lb_fes: f64,
    pub lb_bes_original: f64,
    pub lb_bes_improved: f64,
    pub lb_bes_antipodal: Option<f64>,
    pub lb_overall: f64,
    pub ub_overall: f64,
    pub best_strategy: StrategyFamily,
    pub ratio: f64,
}

pub fn bounds_at(s: f64, steps: &NumericSteps) -> Result<BoundsAtSpeed> {
    check_range(s)?;
    let fc = fast_chord_value(s, steps)?;
    let original = lb_bes_original(s)?;
    let improved = lb_bes_improved(s, steps.y_step, steps.k_step)?.value;
    let fes = lb_fes(s)?;
    let lower = combine_lower(s, original, improved, fes);
    let upper = choose_upper(s, fc);
    Ok(BoundsAtSpeed {
        s,
        ub_bsp: ub_bsp(s).ok(),
        ub_half_chord: ub_half_chord(s)?,
        ub_fast_chord: fc,
        lb_fes: fes,
        lb_bes_original: original,
        lb_bes_improved: improved,
        lb_bes_antipodal: lb_bes_antipodal(s).ok(),
        lb_overall: lower,
        ub_overall: upper.value,
        best_strategy: upper.family,
        ratio: upper.value / lower,
    })
}

/// All bounds on the grid `s_min + i * s_step <= s_max`, in grid order.
pub fn sweep(
    s_min: f64,
    s_max: f64,
    s_step: f64,
    steps: &NumericSteps,
) -> Result<Vec<BoundsAtSpeed>> {
    check_sweep_range(s_min, s_max, s_step)?;
    speed_grid(s_min, s_max, s_step)
        .into_par_iter()
        .map(|s| bounds_at(s, steps))
        .collect()
}

pub(crate) fn check_sweep_range(s_min: f64, s_max: f64, s_step: f64) -> Result<()> {
    if !(1.0..S_MAX).contains(&s_min) {
        return Err(EvacError::domain("s_min", s_min, "[1, 2π + 1)"));
    }
    if !(s_max > s_min && s_max < S_MAX) {
        return Err(EvacError::domain("s_max", s_max, "(s_min, 2π + 1)"));
    }
    if !(s_step > 0.0) {
        return Err(EvacError::domain("s_step", s_step, "(0, ∞)"));
    }
    Ok(())
}

/// `s_min + i * s_step` up to `s_max` inclusive (within rounding).
pub fn speed_grid(s_min: f64, s_max: f64, s_step: f64) -> Vec<f64> {
    let n = ((s_max - s_min) / s_step + 1e-9).floor() as usize;
    (0..=n).map(|i| s_min + i as f64 * s_step).collect()
}

pub fn envelope(s_min: f64, s_max: f64, s_step: f64, steps: &NumericSteps) -> Result<Envelope> {
    let samples = sweep(s_min, s_max, s_step, steps)?
        .into_iter()
        .map(|b| EnvelopeSample {
            s: b.s,
            lb_overall: b.lb_overall,
            ub_overall: b.ub_overall,
            best_strategy: b.best_strategy,
            ratio: b.ratio,
        })
        .collect();
    Ok(Envelope { samples })
}

/// Largest `ub_overall / lb_overall` on the grid over `[s_lo, s_hi]`.
/// Ties go to the smaller `s`.
pub fn max_ratio(s_lo: f64, s_hi: f64, step: f64, steps: &NumericSteps) -> Result<(f64, f64)> {
    check_sweep_range(s_lo, s_hi, step)?;
    let ratios: Vec<(f64, f64)> = grid(s_lo, s_hi, step, true)
        .into_par_iter()
        .map(|s| Ok((s, ub_overall(s, steps)?.value / lb_overall(s, steps)?)))
        .collect::<Result<_>>()?;
    Ok(ratios
        .into_iter()
        .fold((s_lo, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        }))
}
