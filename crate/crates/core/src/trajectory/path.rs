use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::arcset::ArcSet;
use super::geometry::{angular_distance, normalize_angle, Point, ANGLE_EPS};
use crate::error::{EvacError, Result};

/// Positions of consecutive primitives must agree to this tolerance.
const CONTINUITY_TOL: f64 = 1e-9;
const SPEED_TOL: f64 = 1e-12;

/// One piece of a robot's schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MotionPrimitive {
    /// Straight line to `target` at constant `speed`.
    BeelineTo { target: Point, speed: f64 },
    /// Uniform motion on the circle `(center, radius)`, starting at `start_angle`
    /// and turning at `signed_angular_rate` (positive is counterclockwise).
    ArcOnCircle {
        center: Point,
        radius: f64,
        start_angle: f64,
        signed_angular_rate: f64,
        duration: f64,
    },
    /// Stay put.
    Hold { duration: f64 },
}

impl MotionPrimitive {
    fn speed(&self) -> f64 {
        match *self {
            MotionPrimitive::BeelineTo { speed, .. } => speed,
            MotionPrimitive::ArcOnCircle {
                radius,
                signed_angular_rate,
                ..
            } => signed_angular_rate.abs() * radius,
            MotionPrimitive::Hold { .. } => 0.0,
        }
    }

    fn rotated(&self, angle: f64) -> MotionPrimitive {
        match *self {
            MotionPrimitive::BeelineTo { target, speed } => MotionPrimitive::BeelineTo {
                target: target.rotated(angle),
                speed,
            },
            MotionPrimitive::ArcOnCircle {
                center,
                radius,
                start_angle,
                signed_angular_rate,
                duration,
            } => MotionPrimitive::ArcOnCircle {
                center: center.rotated(angle),
                radius,
                start_angle: normalize_angle(start_angle + angle),
                signed_angular_rate,
                duration,
            },
            hold @ MotionPrimitive::Hold { .. } => hold,
        }
    }
}

/// A primitive placed in time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub primitive: MotionPrimitive,
    pub t0: f64,
    pub t1: f64,
    pub from: Point,
    pub to: Point,
}

impl Segment {
    fn position(&self, t: f64) -> Point {
        let tau = (t - self.t0).clamp(0.0, self.t1 - self.t0);
        match self.primitive {
            MotionPrimitive::BeelineTo { target, .. } => {
                let span = self.t1 - self.t0;
                if span <= 0.0 {
                    return target;
                }
                let f = tau / span;
                self.from + (target - self.from) * f
            }
            MotionPrimitive::ArcOnCircle {
                center,
                radius,
                start_angle,
                signed_angular_rate,
                ..
            } => center + Point::polar(radius, start_angle + signed_angular_rate * tau),
            MotionPrimitive::Hold { .. } => self.from,
        }
    }

    /// Sweeps the unit circle (centered at the origin, radius 1).
    fn boundary_sweep(&self, eps_boundary: f64) -> Option<(f64, f64)> {
        match self.primitive {
            MotionPrimitive::ArcOnCircle {
                center,
                radius,
                start_angle,
                signed_angular_rate,
                ..
            } if center.norm() <= eps_boundary && radius >= 1.0 - eps_boundary => {
                Some((start_angle, signed_angular_rate))
            }
            _ => None,
        }
    }

    /// Earliest time within this segment at which the robot stands on the
    /// boundary point at `angle`.
    fn discovery_time(&self, angle: f64, eps_boundary: f64) -> Option<f64> {
        if let Some((start, rate)) = self.boundary_sweep(eps_boundary) {
            if rate == 0.0 {
                return point_hit(self.from, angle, eps_boundary).then_some(self.t0);
            }
            let offset = normalize_angle((angle - start) * rate.signum());
            let swept = rate.abs() * (self.t1 - self.t0);
            if offset <= swept + ANGLE_EPS {
                return Some(self.t0 + (offset / rate.abs()).min(self.t1 - self.t0));
            }
            if TAU - offset <= ANGLE_EPS {
                return Some(self.t0);
            }
            return None;
        }
        if point_hit(self.from, angle, eps_boundary) {
            return Some(self.t0);
        }
        if point_hit(self.to, angle, eps_boundary) {
            return Some(self.t1);
        }
        None
    }
}

fn point_hit(p: Point, angle: f64, eps_boundary: f64) -> bool {
    p.is_on_boundary(eps_boundary) && angular_distance(p.angle(), angle) <= ANGLE_EPS
}

/// A time-parameterized piecewise path of one robot.
///
/// Built through [`TrajectoryBuilder`], which checks continuity and the speed
/// limit. Queries past the end of the schedule return the final position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    start: Point,
    max_speed: f64,
    segments: Vec<Segment>,
}

impl Trajectory {
    pub fn builder(start: Point, max_speed: f64) -> TrajectoryBuilder {
        TrajectoryBuilder {
            start,
            max_speed,
            cursor: start,
            time: 0.0,
            segments: Vec::new(),
            error: None,
        }
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn max_speed(&self) -> f64 {
        self.max_speed
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn primitives(&self) -> impl Iterator<Item = &MotionPrimitive> {
        self.segments.iter().map(|s| &s.primitive)
    }

    pub fn duration(&self) -> f64 {
        self.segments.last().map_or(0.0, |s| s.t1)
    }

    pub fn end(&self) -> Point {
        self.segments.last().map_or(self.start, |s| s.to)
    }

    /// Exact position at time `t`; clamps to the schedule's ends.
    pub fn position_at(&self, t: f64) -> Point {
        if self.segments.is_empty() || t <= 0.0 {
            return self.start;
        }
        if t >= self.duration() {
            return self.end();
        }
        let idx = self.segments.partition_point(|s| s.t1 < t);
        self.segments[idx.min(self.segments.len() - 1)].position(t)
    }

    /// Earliest time the robot occupies the boundary point at `angle`.
    pub fn discovery_time(&self, angle: f64, eps_boundary: f64) -> Option<f64> {
        let angle = normalize_angle(angle);
        if point_hit(self.start, angle, eps_boundary) {
            return Some(0.0);
        }
        self.segments
            .iter()
            .find_map(|s| s.discovery_time(angle, eps_boundary))
    }

    /// Earliest time the robot's path passes within `tol` of `p`.
    pub fn first_arrival(&self, p: Point, tol: f64) -> Option<f64> {
        if self.start.distance(p) <= tol {
            return Some(0.0);
        }
        for s in &self.segments {
            let span = s.t1 - s.t0;
            match s.primitive {
                MotionPrimitive::BeelineTo { .. } => {
                    let d = s.to - s.from;
                    let len2 = d.x * d.x + d.y * d.y;
                    if len2 == 0.0 {
                        continue;
                    }
                    let w = p - s.from;
                    let f = ((w.x * d.x + w.y * d.y) / len2).clamp(0.0, 1.0);
                    if (s.from + d * f).distance(p) <= tol {
                        return Some(s.t0 + f * span);
                    }
                }
                MotionPrimitive::ArcOnCircle {
                    center,
                    radius,
                    start_angle,
                    signed_angular_rate,
                    ..
                } => {
                    if ((p - center).norm() - radius).abs() > tol || signed_angular_rate == 0.0 {
                        continue;
                    }
                    let rel = normalize_angle(
                        ((p - center).angle() - start_angle) * signed_angular_rate.signum(),
                    );
                    let swept = signed_angular_rate.abs() * span;
                    let angular_tol = tol / radius.max(f64::MIN_POSITIVE);
                    if rel <= swept + angular_tol {
                        return Some(s.t0 + (rel / signed_angular_rate.abs()).min(span));
                    }
                    if TAU - rel <= angular_tol {
                        return Some(s.t0);
                    }
                }
                MotionPrimitive::Hold { .. } => {
                    if s.from.distance(p) <= tol {
                        return Some(s.t0);
                    }
                }
            }
        }
        None
    }

    /// Boundary angles the robot has occupied during `[0, t]`.
    ///
    /// Only sweeps along the unit circle contribute measure; isolated touches of
    /// the boundary are points and do not appear in the returned set.
    pub fn explored_arcs(&self, t: f64, eps_boundary: f64) -> ArcSet {
        let mut set = ArcSet::empty();
        for s in &self.segments {
            if s.t0 >= t {
                break;
            }
            if let Some((start, rate)) = s.boundary_sweep(eps_boundary) {
                let dt = t.min(s.t1) - s.t0;
                set.insert(start, rate * dt);
            }
        }
        set
    }

    /// Earliest time at which the robot is on the boundary, if ever.
    pub fn first_boundary_contact(&self, eps_boundary: f64) -> Option<f64> {
        if self.start.is_on_boundary(eps_boundary) {
            return Some(0.0);
        }
        self.segments.iter().find_map(|s| {
            if s.boundary_sweep(eps_boundary).is_some() || s.from.is_on_boundary(eps_boundary) {
                Some(s.t0)
            } else if s.to.is_on_boundary(eps_boundary) {
                Some(s.t1)
            } else {
                None
            }
        })
    }

    /// The same schedule rotated about the origin by `angle`.
    pub fn rotated(&self, angle: f64) -> Trajectory {
        Trajectory {
            start: self.start.rotated(angle),
            max_speed: self.max_speed,
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    primitive: s.primitive.rotated(angle),
                    t0: s.t0,
                    t1: s.t1,
                    from: s.from.rotated(angle),
                    to: s.to.rotated(angle),
                })
                .collect(),
        }
    }
}

/// Appends primitives to a trajectory, validating each one.
///
/// Zero-length moves are dropped. The first failure is remembered and reported
/// by [`TrajectoryBuilder::build`].
#[derive(Debug)]
pub struct TrajectoryBuilder {
    start: Point,
    max_speed: f64,
    cursor: Point,
    time: f64,
    segments: Vec<Segment>,
    error: Option<EvacError>,
}

impl TrajectoryBuilder {
    pub fn position(&self) -> Point {
        self.cursor
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    fn fail(&mut self, msg: String) {
        if self.error.is_none() {
            self.error = Some(EvacError::Construction(msg));
        }
    }

    pub fn push(mut self, primitive: MotionPrimitive) -> Self {
        if self.error.is_some() {
            return self;
        }
        let speed = primitive.speed();
        if !(speed.is_finite() && speed <= self.max_speed + SPEED_TOL) {
            self.fail(format!(
                "primitive speed {speed} exceeds max speed {}",
                self.max_speed
            ));
            return self;
        }
        let from = self.cursor;
        let duration = match primitive {
            MotionPrimitive::BeelineTo { target, speed } => {
                let len = from.distance(target);
                if len == 0.0 {
                    return self;
                }
                if speed <= 0.0 {
                    self.fail(format!("beeline speed {speed} must be positive"));
                    return self;
                }
                len / speed
            }
            MotionPrimitive::ArcOnCircle {
                center,
                radius,
                start_angle,
                duration,
                ..
            } => {
                if radius <= 0.0 {
                    self.fail(format!("arc radius {radius} must be positive"));
                    return self;
                }
                let start = center + Point::polar(radius, start_angle);
                if start.distance(from) > CONTINUITY_TOL {
                    self.fail(format!(
                        "arc starts at ({}, {}) but robot is at ({}, {})",
                        start.x, start.y, from.x, from.y
                    ));
                    return self;
                }
                duration
            }
            MotionPrimitive::Hold { duration } => duration,
        };
        if !(duration >= 0.0 && duration.is_finite()) {
            self.fail(format!(
                "duration {duration} must be finite and non-negative"
            ));
            return self;
        }
        if duration == 0.0 {
            return self;
        }
        let mut seg = Segment {
            primitive,
            t0: self.time,
            t1: self.time + duration,
            from,
            to: from,
        };
        seg.to = match primitive {
            MotionPrimitive::BeelineTo { target, .. } => target,
            _ => seg.position(seg.t1),
        };
        if seg.to.norm() > 1.0 + DEFAULT_BOUNDARY_SLACK {
            self.fail(format!(
                "primitive leaves the disk at ({}, {})",
                seg.to.x, seg.to.y
            ));
            return self;
        }
        self.cursor = seg.to;
        self.time = seg.t1;
        self.segments.push(seg);
        self
    }

    pub fn beeline(self, target: Point, speed: f64) -> Self {
        self.push(MotionPrimitive::BeelineTo { target, speed })
    }

    /// Arc around the origin continuing from the current position.
    pub fn arc_about_origin(self, signed_angular_rate: f64, duration: f64) -> Self {
        let radius = self.cursor.norm();
        let start_angle = self.cursor.angle();
        self.push(MotionPrimitive::ArcOnCircle {
            center: Point::ORIGIN,
            radius,
            start_angle,
            signed_angular_rate,
            duration,
        })
    }

    pub fn hold(self, duration: f64) -> Self {
        self.push(MotionPrimitive::Hold { duration })
    }

    pub fn build(self) -> Result<Trajectory> {
        if let Some(err) = self.error {
            return Err(err);
        }
        if !(self.max_speed > 0.0 && self.max_speed.is_finite()) {
            return Err(EvacError::Construction(format!(
                "max speed {} must be positive",
                self.max_speed
            )));
        }
        if self.start.norm() > 1.0 + DEFAULT_BOUNDARY_SLACK {
            return Err(EvacError::Construction(
                "start lies outside the disk".into(),
            ));
        }
        Ok(Trajectory {
            start: self.start,
            max_speed: self.max_speed,
            segments: self.segments,
        })
    }
}

const DEFAULT_BOUNDARY_SLACK: f64 = super::geometry::DEFAULT_EPS_BOUNDARY;
