//! Closed-form and numeric upper and lower bounds as functions of `s`.

mod improved;
mod lower;
mod upper;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::numeric::bisect;

pub use improved::{lb_bes_improved, ImprovedBesEvaluation, ImprovedBesExpr};
pub use lower::{lb_bes_antipodal, lb_bes_original, lb_fes, ses_worst_case};
pub use upper::{bsp_phase1_time, bsp_phase2_time, half_chord_phase1_time, ub_bsp, ub_half_chord};

/// Upper end (exclusive) of the speed range covered by the lower bounds.
pub const S_MAX: f64 = std::f64::consts::TAU + 1.0;
pub const DEFAULT_Y_STEP: f64 = 1e-3;
pub const DEFAULT_K_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    UpperBound,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundFamily {
    Bsp,
    HalfChord,
    FastChord,
    Fes,
    BesOriginal,
    BesAntipodal,
    BesImproved,
    Ses,
}

impl BoundFamily {
    pub fn kind(self) -> BoundKind {
        match self {
            BoundFamily::Bsp | BoundFamily::HalfChord | BoundFamily::FastChord => {
                BoundKind::UpperBound
            }
            _ => BoundKind::LowerBound,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::Bsp => "BSP",
            BoundFamily::HalfChord => "Half-Chord",
            BoundFamily::FastChord => "Fast-Chord",
            BoundFamily::Fes => "FES",
            BoundFamily::BesOriginal => "BES original",
            BoundFamily::BesAntipodal => "BES antipodal",
            BoundFamily::BesImproved => "BES improved",
            BoundFamily::Ses => "SES",
        }
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One sample of a bound curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub s: f64,
    pub value: f64,
    pub kind: BoundKind,
    pub family: BoundFamily,
}

impl BoundValue {
    pub fn new(family: BoundFamily, s: f64, value: f64) -> Self {
        BoundValue {
            s,
            value,
            kind: family.kind(),
            family,
        }
    }
}

/// Bisection tolerance for the closed-form switch points.
const SWITCH_TOL: f64 = 1e-12;

/// Speed above which the original BES bound is attained at the landing time
/// (the optimal Slow arc length shrinks to zero).
pub fn c_4_84() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        let g = |s: f64| 2.0 * (-2.0 / (s + 1.0)).acos() - (s - 1.0);
        bisect(g, 4.5, 5.2, SWITCH_TOL, 0.0)
            .expect("sign change on [4.5, 5.2]")
            .0
    })
}

/// Speed at which the antipodal BES bound switches to the FES expression.
pub fn c_4_97() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        let g = |s: f64| 2.0 * (-2.0 / s).acos() - (s - 1.0);
        bisect(g, 4.5, 5.2, SWITCH_TOL, 0.0)
            .expect("sign change on [4.5, 5.2]")
            .0
    })
}
