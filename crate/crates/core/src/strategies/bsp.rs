use std::f64::consts::TAU;

use super::{check_speed, Strategy, StrategyFamily};
use crate::trajectory::{Point, Trajectory};
use crate::Result;

/// Time at which the two robots meet again after splitting at `B`.
pub fn bsp_meeting_time(s: f64) -> f64 {
    1.0 + (TAU - s + 1.0) / (s + 1.0)
}

/// Both robots go to `B`; Fast then sweeps counterclockwise, Slow clockwise,
/// until they meet.
pub fn build_bsp(s: f64) -> Result<Strategy> {
    check_speed(s)?;
    let meet = bsp_meeting_time(s);
    let b = Point::on_boundary(0.0);
    let fast = Trajectory::builder(Point::ORIGIN, s)
        .beeline(b, s)
        .arc_about_origin(s, meet - 1.0 / s)
        .build()?;
    let slow = Trajectory::builder(Point::ORIGIN, 1.0)
        .beeline(b, 1.0)
        .arc_about_origin(-1.0, meet - 1.0)
        .build()?;
    Ok(Strategy {
        s,
        fast,
        slow,
        family: StrategyFamily::Bsp,
        label: StrategyFamily::Bsp.name().to_string(),
    })
}
