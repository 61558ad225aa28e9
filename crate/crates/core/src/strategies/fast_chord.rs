use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_speed, Strategy, StrategyFamily};
use crate::numeric::{bisect, grid};
use crate::trajectory::{Point, Trajectory};
use crate::worstcase::distance_sweep_worst_case;
use crate::{EvacError, Result};

/// Target accuracy of the scalar equation in `y`.
const ROOT_TOL: f64 = 1e-10;
const SCAN_BRACKETS: usize = 1000;

/// Boundary partition of a Fast-Chord strategy.
///
/// `x1` is Fast's extra arc after time 1, `x2` its chord back to `B`, `x3` the
/// arc finished jointly at the end and `y` Slow's arc while Fast is away.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FastChordSolution {
    pub s: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub y: f64,
    pub residual: f64,
}

impl FastChordSolution {
    /// Boundary angle where Slow lands and where Fast leaves the boundary.
    pub fn c_angle(&self) -> f64 {
        self.s - 1.0 + self.x1
    }

    /// Time at which the robots meet and the boundary is fully explored.
    pub fn meeting_time(&self) -> f64 {
        1.0 + self.y + self.x3 / (self.s + 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FastChordBest {
    pub x3_star: f64,
    pub solution: FastChordSolution,
    pub worst_time: f64,
}

fn residual_fn(s: f64, x3: f64) -> impl Fn(f64) -> f64 {
    let l = TAU - s + 1.0 - x3;
    move |y| l - (1.0 + s) * y + 2.0 * ((x3 + y) / 2.0).sin()
}

/// Solves the partition equations for `y` given `x3`.
///
/// With `x1 = 2π - s + 1 - y - x3` and `x2 = 2 sin((x3 + y) / 2)` the timing
/// condition `x1 + x2 = s y` becomes one scalar equation in `y`.
pub fn solve_fast_chord_system(s: f64, x3: f64) -> Result<FastChordSolution> {
    if !(1.0..TAU + 1.0).contains(&s) {
        return Err(EvacError::domain("s", s, "[1, 2π + 1)"));
    }
    let x3_max = TAU - s + 1.0;
    if !(0.0..=x3_max).contains(&x3) {
        return Err(EvacError::domain("x3", x3, "[0, 2π - s + 1]"));
    }
    let f = residual_fn(s, x3);
    let y_max = x3_max - x3;
    // bisect to machine precision; ROOT_TOL is only the acceptance threshold
    let y = match bisect(&f, 0.0, y_max, 0.0, 0.0) {
        Ok((y, _, _)) => y,
        Err(_) => scan_root(&f, y_max).ok_or(EvacError::Infeasible { s, x3 })?,
    };
    let x1 = y_max - y;
    let x2 = 2.0 * ((x3 + y) / 2.0).sin();
    let residual = f(y).abs();
    if x1 < 0.0 || x2 < 0.0 || residual > ROOT_TOL {
        return Err(EvacError::Infeasible { s, x3 });
    }
    Ok(FastChordSolution {
        s,
        x1,
        x2,
        x3,
        y,
        residual,
    })
}

/// Smallest root found by splitting `[0, y_max]` into equal sub-brackets.
fn scan_root(f: &impl Fn(f64) -> f64, y_max: f64) -> Option<f64> {
    if y_max <= 0.0 {
        return (f(0.0).abs() <= ROOT_TOL).then_some(0.0);
    }
    let h = y_max / SCAN_BRACKETS as f64;
    (0..SCAN_BRACKETS).find_map(|i| {
        let lo = i as f64 * h;
        let hi = if i + 1 == SCAN_BRACKETS {
            y_max
        } else {
            lo + h
        };
        bisect(f, lo, hi, 0.0, 0.0)
            .ok()
            .map(|r| r.0)
            .filter(|&y| f(y).abs() <= ROOT_TOL)
    })
}

/// Builds the Fast-Chord trajectories for a solved partition.
pub fn build_fast_chord(s: f64, sol: &FastChordSolution) -> Result<Strategy> {
    check_speed(s)?;
    let valid = sol.s == s
        && sol.x1 >= 0.0
        && sol.x2 >= 0.0
        && sol.x3 >= 0.0
        && sol.y >= 0.0
        && (sol.x1 + sol.y + sol.x3 + s - 1.0 - TAU).abs() <= 1e-8
        && (sol.x2 - 2.0 * ((sol.x3 + sol.y) / 2.0).sin()).abs() <= 1e-8
        && (sol.x1 + sol.x2 - s * sol.y).abs() <= 1e-8;
    if !valid {
        return Err(EvacError::Construction(format!(
            "Fast-Chord solution does not satisfy the partition equations for s = {s}"
        )));
    }
    let c = Point::on_boundary(sol.c_angle());
    let b = Point::on_boundary(0.0);
    let last = sol.x3 / (s + 1.0);
    let fast = Trajectory::builder(Point::ORIGIN, s)
        .beeline(b, s)
        .arc_about_origin(s, sol.c_angle() / s)
        .beeline(b, s)
        .arc_about_origin(-s, last)
        .build()?;
    let slow = Trajectory::builder(Point::ORIGIN, 1.0)
        .beeline(c, 1.0)
        .arc_about_origin(1.0, sol.y + last)
        .build()?;
    Ok(Strategy {
        s,
        fast,
        slow,
        family: StrategyFamily::FastChord,
        label: StrategyFamily::FastChord.name().to_string(),
    })
}

/// Sweeps `x3` over `[0, 2π - s + 1]` and keeps the partition with the smallest
/// worst-case time. Ties go to the smaller `x3`.
pub fn optimize_fast_chord(s: f64, x3_step: f64, time_step: f64) -> Result<FastChordBest> {
    if !(x3_step > 0.0) {
        return Err(EvacError::domain("x3_step", x3_step, "(0, ∞)"));
    }
    if !(time_step > 0.0) {
        return Err(EvacError::domain("time_step", time_step, "(0, ∞)"));
    }
    if !(1.0..TAU + 1.0).contains(&s) {
        return Err(EvacError::domain("s", s, "[1, 2π + 1)"));
    }
    let candidates: Vec<Option<FastChordBest>> = grid(0.0, TAU - s + 1.0, x3_step, true)
        .into_par_iter()
        .map(|x3| {
            let solution = solve_fast_chord_system(s, x3).ok()?;
            let strategy = build_fast_chord(s, &solution).ok()?;
            let worst = distance_sweep_worst_case(&strategy, time_step).ok()?;
            Some(FastChordBest {
                x3_star: x3,
                solution,
                worst_time: worst.evac_time,
            })
        })
        .collect();
    candidates
        .into_iter()
        .flatten()
        .fold(None, |best: Option<FastChordBest>, c| match best {
            Some(b) if b.worst_time <= c.worst_time => Some(b),
            _ => Some(c),
        })
        .ok_or(EvacError::NoFeasibleX3 { s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::DEFAULT_EPS_BOUNDARY as EPS;
    use proptest::prelude::*;

    /// Independent solver: the timing equation rearranged as a contraction in `y`.
    fn fixed_point_y(s: f64, x3: f64) -> f64 {
        let l = TAU - s + 1.0 - x3;
        let mut y = 0.0;
        for _ in 0..10_000 {
            let next = (l + 2.0 * ((x3 + y) / 2.0).sin()) / (s + 1.0);
            if (next - y).abs() < 1e-15 {
                return next;
            }
            y = next;
        }
        y
    }

    #[test]
    fn reduces_to_bsp_at_one() {
        let sol = solve_fast_chord_system(1.0, TAU).unwrap();
        assert!(sol.x1.abs() < 1e-12 && sol.y.abs() < 1e-12 && sol.x2.abs() < 1e-12);
        let st = build_fast_chord(1.0, &sol).unwrap();
        let bsp = super::super::build_bsp(1.0).unwrap();
        for t in [0.3, 1.0, 2.0, 3.5, 4.0] {
            assert!(st.fast.position_at(t).distance(bsp.slow.position_at(t)) < 1e-12);
            assert!(st.slow.position_at(t).distance(bsp.fast.position_at(t)) < 1e-12);
        }
    }

    #[test]
    fn matches_fixed_point_oracle() {
        let sol = solve_fast_chord_system(2.0, 1.0).unwrap();
        assert!(sol.residual <= ROOT_TOL);
        assert!((sol.y - fixed_point_y(2.0, 1.0)).abs() < 1e-9);
        // timing condition via the other rearrangement
        assert!((sol.y - (sol.x1 + sol.x2) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn phase_one_distance_formula() {
        let s = 1.8;
        let sol = solve_fast_chord_system(s, 1.2).unwrap();
        let st = build_fast_chord(s, &sol).unwrap();
        for i in 1..=20 {
            let t = 1.0 / s + (1.0 - 1.0 / s) * i as f64 / 20.0;
            let d = st.fast.position_at(t).distance(st.slow.position_at(t));
            let formula = (1.0 + t * t - 2.0 * t * (s * (1.0 - t) + sol.x1).cos()).sqrt();
            assert!((d - formula).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn fast_at_a_when_slow_at_c() {
        let s = 1.7;
        let sol = solve_fast_chord_system(s, 2.0).unwrap();
        let st = build_fast_chord(s, &sol).unwrap();
        assert!(
            st.fast
                .position_at(1.0)
                .distance(Point::on_boundary(s - 1.0))
                < 1e-12
        );
        assert!(
            st.slow
                .position_at(1.0)
                .distance(Point::on_boundary(sol.c_angle()))
                < 1e-12
        );
    }

    #[test]
    fn meet_when_boundary_done() {
        let s = 1.9;
        let sol = solve_fast_chord_system(s, 0.7).unwrap();
        let st = build_fast_chord(s, &sol).unwrap();
        let t = sol.meeting_time();
        assert!(st.fast.position_at(t).distance(st.slow.position_at(t)) < 1e-12);
        assert!((st.fast.duration() - t).abs() < 1e-12);
        assert!((st.slow.duration() - t).abs() < 1e-12);
        let all = st
            .fast
            .explored_arcs(t, EPS)
            .union(&st.slow.explored_arcs(t, EPS));
        assert!(all.is_full());
        let before = t - 1e-3;
        let part = st
            .fast
            .explored_arcs(before, EPS)
            .union(&st.slow.explored_arcs(before, EPS));
        assert!(!part.is_full());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(solve_fast_chord_system(2.0, -0.1).is_err());
        assert!(solve_fast_chord_system(2.0, 6.0).is_err());
        assert!(solve_fast_chord_system(0.5, 1.0).is_err());
        let mut sol = solve_fast_chord_system(2.0, 1.0).unwrap();
        sol.y += 0.1;
        assert!(matches!(
            build_fast_chord(2.0, &sol),
            Err(EvacError::Construction(_))
        ));
        assert!(optimize_fast_chord(2.0, 0.0, 0.01).is_err());
    }

    /// Closed-form positions in each phase, written from the partition directly.
    fn fast_closed_form(sol: &FastChordSolution, t: f64) -> Point {
        let s = sol.s;
        let c = sol.c_angle();
        if t <= 1.0 / s {
            Point::new(s * t, 0.0)
        } else if t <= 1.0 + sol.x1 / s {
            Point::on_boundary(s * t - 1.0)
        } else if t <= 1.0 + sol.y {
            let f = (s * (t - 1.0) - sol.x1) / sol.x2;
            Point::new(c.cos() + f * (1.0 - c.cos()), c.sin() * (1.0 - f))
        } else {
            Point::on_boundary(-s * (t - 1.0 - sol.y))
        }
    }

    fn slow_closed_form(sol: &FastChordSolution, t: f64) -> Point {
        let c = sol.c_angle();
        if t <= 1.0 {
            Point::polar(t, c)
        } else {
            Point::on_boundary(c + t - 1.0)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn solutions_satisfy_system(s in 1.0..7.0f64, frac in 0.0..=1.0f64) {
            let x3 = frac * (TAU - s + 1.0);
            if let Ok(sol) = solve_fast_chord_system(s, x3) {
                prop_assert!((sol.x1 + sol.y + sol.x3 + s - 1.0 - TAU).abs() < 1e-8);
                prop_assert!((sol.x2 - 2.0 * ((sol.x3 + sol.y) / 2.0).sin()).abs() < 1e-8);
                prop_assert!((sol.x1 + sol.x2 - s * sol.y).abs() <= 1e-10);
                prop_assert!((sol.y - fixed_point_y(s, x3)).abs() < 1e-8);
            }
        }

        #[test]
        fn positions_match_closed_forms(s in 1.05..2.5f64, frac in 0.05..0.95f64, seed in 0u64..1000) {
            let x3 = frac * (TAU - s + 1.0);
            let Ok(sol) = solve_fast_chord_system(s, x3) else { return Ok(()); };
            prop_assume!(sol.x2 > 1e-6);
            let st = build_fast_chord(s, &sol).unwrap();
            let horizon = sol.meeting_time();
            for i in 0..100u64 {
                // cheap deterministic spread of sample times
                let u = ((seed * 7919 + i * 104_729) % 10_007) as f64 / 10_007.0;
                let t = u * horizon;
                prop_assert!(st.fast.position_at(t).distance(fast_closed_form(&sol, t)) < 1e-9);
                prop_assert!(st.slow.position_at(t).distance(slow_closed_form(&sol, t)) < 1e-9);
            }
        }
    }
}
