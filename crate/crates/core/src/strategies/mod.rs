//! The three two-robot strategies as pairs of trajectories.
//!
//! Every strategy lands first at `B = (1, 0)`; the adversary sweep over exit
//! angles covers all relative placements.

mod bsp;
mod fast_chord;
mod half_chord;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::trajectory::Trajectory;

pub use bsp::{bsp_meeting_time, build_bsp};
pub use fast_chord::{
    build_fast_chord, optimize_fast_chord, solve_fast_chord_system, FastChordBest,
    FastChordSolution,
};
pub use half_chord::{build_half_chord, HalfChordGeometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StrategyFamily {
    Bsp,
    HalfChord,
    FastChord,
}

impl StrategyFamily {
    pub fn name(self) -> &'static str {
        match self {
            StrategyFamily::Bsp => "BSP",
            StrategyFamily::HalfChord => "Half-Chord",
            StrategyFamily::FastChord => "Fast-Chord",
        }
    }
}

impl fmt::Display for StrategyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Fast robot with speed `s` and a Slow robot with speed 1, both starting at the center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub s: f64,
    pub fast: Trajectory,
    pub slow: Trajectory,
    pub family: StrategyFamily,
    pub label: String,
}

impl Strategy {
    /// Latest end time of the two schedules.
    pub fn duration(&self) -> f64 {
        self.fast.duration().max(self.slow.duration())
    }

    /// Both robots rotated about the center by `angle`.
    pub fn rotated(&self, angle: f64) -> Strategy {
        Strategy {
            fast: self.fast.rotated(angle),
            slow: self.slow.rotated(angle),
            ..self.clone()
        }
    }
}

pub(crate) fn check_speed(s: f64) -> crate::Result<()> {
    if s >= 1.0 && s.is_finite() {
        Ok(())
    } else {
        Err(crate::EvacError::domain("s", s, "[1, ∞)"))
    }
}
