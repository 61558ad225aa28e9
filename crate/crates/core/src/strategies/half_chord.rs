use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{check_speed, Strategy, StrategyFamily};
use crate::trajectory::{Point, Trajectory};
use crate::{EvacError, Result};

/// Lengths and angles of the Half-Chord construction for `s >= 2`.
///
/// Angles are measured at the center, counterclockwise from `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfChordGeometry {
    pub s: f64,
    /// |OC|
    pub oc: f64,
    /// angle BOC
    pub phi: f64,
    /// angle COM
    pub theta: f64,
    /// angle MOB
    pub psi: f64,
    pub arc_ba: f64,
    pub arc_cm: f64,
    pub chord_ab: f64,
    pub half_chord_mb: f64,
}

impl HalfChordGeometry {
    pub fn new(s: f64) -> Result<Self> {
        if !(s >= 2.0 && s.is_finite()) {
            return Err(EvacError::domain("s", s, "[2, ∞)"));
        }
        let alpha = (-2.0 / s).acos();
        let half = (1.0 - 4.0 / (s * s)).max(0.0).sqrt();
        Ok(HalfChordGeometry {
            s,
            oc: 2.0 / s,
            phi: PI + 0.5,
            theta: alpha - 0.5,
            psi: PI - alpha,
            arc_ba: 2.0 * alpha,
            arc_cm: (2.0 * alpha - 1.0) / s,
            chord_ab: 2.0 * half,
            half_chord_mb: half,
        })
    }

    pub fn point_a(&self) -> Point {
        Point::on_boundary(self.arc_ba)
    }

    pub fn point_c(&self) -> Point {
        Point::polar(self.oc, self.phi)
    }

    /// Midpoint of the chord AB.
    pub fn point_m(&self) -> Point {
        Point::polar(self.oc, self.phi + self.theta)
    }

    /// End of Slow's straight run to C.
    pub fn phase1_end(&self) -> f64 {
        2.0 / self.s
    }

    /// Slow reaches M and Fast reaches A.
    pub fn phase2_end(&self) -> f64 {
        (1.0 + self.arc_ba) / self.s
    }
}

/// Half-Chord: Fast sweeps the whole boundary while Slow cuts through the
/// interior towards the midpoint of the chord AB and then walks to `B`.
///
/// For `1 <= s < 2` the `s = 2` layout is used with Slow moving at `s / 2`.
pub fn build_half_chord(s: f64) -> Result<Strategy> {
    check_speed(s)?;
    let b = Point::on_boundary(0.0);
    let fast = Trajectory::builder(Point::ORIGIN, s)
        .beeline(b, s)
        .arc_about_origin(s, TAU / s)
        .build()?;

    let g = HalfChordGeometry::new(s.max(2.0))?;
    let slow_speed = s.min(2.0) / 2.0;
    let arc_rate = g.theta / (g.phase2_end() - g.phase1_end()) * slow_speed;
    let mut slow = Trajectory::builder(Point::ORIGIN, 1.0)
        .beeline(g.point_c(), slow_speed)
        .arc_about_origin(arc_rate, g.theta / arc_rate);
    if g.half_chord_mb > 0.0 {
        slow = slow.beeline(b, slow_speed);
    }
    Ok(Strategy {
        s,
        fast,
        slow: slow.build()?,
        family: StrategyFamily::HalfChord,
        label: StrategyFamily::HalfChord.name().to_string(),
    })
}
