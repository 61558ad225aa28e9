//! Exit-placing adversary and the unexplored-gap utility.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numeric::{golden_maximize, grid, local_maxima};
use crate::strategies::Strategy;
use crate::trajectory::{normalize_angle, ArcSet, Point, DEFAULT_EPS_BOUNDARY};
use crate::{EvacError, Result};

pub const DEFAULT_GRID_STEP: f64 = TAU / 1e4;
pub const DEFAULT_REFINE_TOL: f64 = 1e-8;
pub const DEFAULT_TIME_STEP: f64 = 1e-2;

/// Local maxima of the coarse grid that get refined.
const REFINED_PEAKS: usize = 8;
const TIME_REFINE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Finder {
    Fast,
    Slow,
}

impl Finder {
    pub fn name(self) -> &'static str {
        match self {
            Finder::Fast => "fast",
            Finder::Slow => "slow",
        }
    }
}

/// Outcome for one exit placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExitOutcome {
    pub discovery_time: f64,
    pub finder: Finder,
    pub evac_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub exit_angle: f64,
    pub discovery_time: f64,
    pub finder: Finder,
    pub evac_time: f64,
    pub grid_step_used: f64,
}

/// Result of the time-indexed sweep used for Fast-Chord.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepWorstCase {
    /// Time at which the maximum is attained.
    pub time: f64,
    pub evac_time: f64,
    pub window: (f64, f64),
    pub time_step_used: f64,
}

/// Evacuation time when the exit sits at `exit_angle`.
///
/// The finder stops at the exit; the other robot beelines to it at full speed.
pub fn evac_time_for_exit(strategy: &Strategy, exit_angle: f64) -> Result<ExitOutcome> {
    let angle = normalize_angle(exit_angle);
    let tf = strategy.fast.discovery_time(angle, DEFAULT_EPS_BOUNDARY);
    let ts = strategy.slow.discovery_time(angle, DEFAULT_EPS_BOUNDARY);
    let (t, finder) = match (tf, ts) {
        (Some(f), Some(s)) if s < f => (s, Finder::Slow),
        (Some(f), _) => (f, Finder::Fast),
        (None, Some(s)) => (s, Finder::Slow),
        (None, None) => return Err(EvacError::Coverage { angle }),
    };
    let other = match finder {
        Finder::Fast => &strategy.slow,
        Finder::Slow => &strategy.fast,
    };
    let exit = Point::on_boundary(angle);
    let evac_time = t + other.position_at(t).distance(exit) / other.max_speed();
    Ok(ExitOutcome {
        discovery_time: t,
        finder,
        evac_time,
    })
}

/// Maximizes [`evac_time_for_exit`] over all exit angles.
///
/// A uniform grid is evaluated first; the best few local maxima are then
/// refined by golden-section search on the two neighbouring cells.
pub fn worst_case(strategy: &Strategy, grid_step: f64, refine_tol: f64) -> Result<WorstCase> {
    if !(grid_step > 0.0 && grid_step <= TAU) {
        return Err(EvacError::domain("grid_step", grid_step, "(0, 2π]"));
    }
    if !(refine_tol > 0.0) {
        return Err(EvacError::domain("refine_tol", refine_tol, "(0, ∞)"));
    }
    let n = (TAU / grid_step).ceil() as usize;
    let h = TAU / n as f64;
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| evac_time_for_exit(strategy, i as f64 * h).map(|o| o.evac_time))
        .collect::<Result<_>>()?;

    let mut best = (0.0, f64::NEG_INFINITY);
    for &i in local_maxima(&values, true).iter().take(REFINED_PEAKS) {
        let centre = i as f64 * h;
        let eval =
            |a: f64| evac_time_for_exit(strategy, a).map_or(f64::NEG_INFINITY, |o| o.evac_time);
        let (a, v) = golden_maximize(eval, centre - h, centre + h, refine_tol);
        let (a, v) = if values[i] >= v {
            (centre, values[i])
        } else {
            (normalize_angle(a), v)
        };
        if v > best.1 || (v == best.1 && a < best.0) {
            best = (a, v);
        }
    }
    let outcome = evac_time_for_exit(strategy, best.0)?;
    Ok(WorstCase {
        exit_angle: best.0,
        discovery_time: outcome.discovery_time,
        finder: outcome.finder,
        evac_time: outcome.evac_time,
        grid_step_used: h,
    })
}

/// Boundary angles explored by either robot up to time `t`.
pub fn explored_union(strategy: &Strategy, t: f64) -> ArcSet {
    strategy
        .fast
        .explored_arcs(t, DEFAULT_EPS_BOUNDARY)
        .union(&strategy.slow.explored_arcs(t, DEFAULT_EPS_BOUNDARY))
}

/// First time at which the two robots together have explored the whole boundary.
pub fn coverage_time(strategy: &Strategy) -> Result<f64> {
    let mut ends: Vec<f64> = strategy
        .fast
        .segments()
        .iter()
        .chain(strategy.slow.segments())
        .map(|s| s.t1)
        .collect();
    ends.sort_by(f64::total_cmp);
    let mut prev = 0.0;
    for &t in &ends {
        if explored_union(strategy, t).is_full() {
            let (mut lo, mut hi) = (prev, t);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if explored_union(strategy, mid).is_full() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(hi);
        }
        prev = t;
    }
    let missing = explored_union(strategy, strategy.duration())
        .complement()
        .first()
        .map_or(0.0, |c| c.start);
    Err(EvacError::Coverage { angle: missing })
}

/// Time-indexed worst case: the maximum over `t` of
/// `t + |Fast(t) - Slow(t)| / v`, with `v` the smaller of the two speeds.
///
/// `t` ranges from the first boundary contact to full coverage. The grid at
/// `time_step` is augmented with all segment switch times and its local maxima
/// are refined by golden-section search.
pub fn distance_sweep_worst_case(strategy: &Strategy, time_step: f64) -> Result<SweepWorstCase> {
    if !(time_step > 0.0) {
        return Err(EvacError::domain("time_step", time_step, "(0, ∞)"));
    }
    let contact = [&strategy.fast, &strategy.slow]
        .iter()
        .filter_map(|t| t.first_boundary_contact(DEFAULT_EPS_BOUNDARY))
        .fold(f64::INFINITY, f64::min);
    let end = coverage_time(strategy)?;
    let start = contact.min(end);
    let v = strategy.fast.max_speed().min(strategy.slow.max_speed());
    let eval = |t: f64| {
        t + strategy
            .fast
            .position_at(t)
            .distance(strategy.slow.position_at(t))
            / v
    };

    let mut times = grid(start, end, time_step, true);
    times.extend(
        strategy
            .fast
            .segments()
            .iter()
            .chain(strategy.slow.segments())
            .flat_map(|s| [s.t0, s.t1])
            .filter(|&t| t > start && t < end),
    );
    times.sort_by(f64::total_cmp);
    times.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let values: Vec<f64> = times.iter().map(|&t| eval(t)).collect();

    let mut best = (start, f64::NEG_INFINITY);
    for &i in local_maxima(&values, false).iter().take(REFINED_PEAKS) {
        let lo = times[i.saturating_sub(1)];
        let hi = times[(i + 1).min(times.len() - 1)];
        let (t, v) = golden_maximize(eval, lo, hi, TIME_REFINE_TOL);
        let (t, v) = if values[i] >= v {
            (times[i], values[i])
        } else {
            (t, v)
        };
        if v > best.1 || (v == best.1 && t < best.0) {
            best = (t, v);
        }
    }
    Ok(SweepWorstCase {
        time: best.0,
        evac_time: best.1,
        window: (start, end),
        time_step_used: time_step,
    })
}

/// Largest boundary (geodesic) distance between two unexplored points.
///
/// Equals `π` minus the circular distance between the unexplored set and its
/// antipodal image, so the result never exceeds `π`.
pub fn max_unexplored_gap(explored: &ArcSet) -> Result<f64> {
    if explored.is_full() {
        return Err(EvacError::FullyExplored);
    }
    let unexplored = explored.complement();
    // unrolled copies on the line so circular neighbours are found by binary search
    let mut line: Vec<(f64, f64)> = Vec::with_capacity(unexplored.len() * 3);
    for shift in [-TAU, 0.0, TAU] {
        line.extend(
            unexplored
                .iter()
                .map(|c| (c.start + shift, c.end() + shift)),
        );
    }
    line.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut closest = f64::INFINITY;
    for c in &unexplored {
        let (a, b) = (c.start + PI, c.end() + PI);
        let (a, b) = if a >= TAU { (a - TAU, b - TAU) } else { (a, b) };
        // first interval starting after a
        let k = line.partition_point(|iv| iv.0 <= a);
        let mut d = f64::INFINITY;
        if k > 0 {
            let prev = line[k - 1];
            d = d.min((a - prev.1).max(0.0));
        }
        if k < line.len() {
            d = d.min((line[k].0 - b).max(0.0));
        }
        closest = closest.min(d);
        if closest == 0.0 {
            break;
        }
    }
    Ok(PI - closest.min(PI))
}
