use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{EvacError, Result};

/// A robot "is on the boundary" iff its radius is at least `1 - DEFAULT_EPS_BOUNDARY`.
pub const DEFAULT_EPS_BOUNDARY: f64 = 1e-9;

/// Angular slack used when matching an exit angle against a swept interval.
pub(crate) const ANGLE_EPS: f64 = 1e-12;

/// A point in the plane; the disk is centered at the origin with unit radius.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Point::new(radius * cos, radius * sin)
    }

    /// Point on the unit circle at `angle`.
    pub fn on_boundary(angle: f64) -> Self {
        Point::polar(1.0, angle)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Polar angle normalized to `[0, 2π)`.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }

    pub fn is_on_boundary(self, eps_boundary: f64) -> bool {
        self.norm() >= 1.0 - eps_boundary
    }

    pub fn rotated(self, angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Point::new(cos * self.x - sin * self.y, sin * self.x + cos * self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// Maps any angle into `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Shorter of the two boundary arcs between angles `a` and `b`, in `[0, π]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

/// Length of the chord subtending a boundary arc of length `arc`.
pub fn chord_of_arc(arc: f64) -> Result<f64> {
    if !(0.0..=TAU).contains(&arc) {
        return Err(EvacError::domain("arc", arc, "[0, 2π]"));
    }
    Ok(2.0 * (arc / 2.0).sin())
}

/// Third side of a triangle with sides `r1`, `r2` enclosing `angle`.
pub fn law_of_cosines(r1: f64, r2: f64, angle: f64) -> Result<f64> {
    if r1 < 0.0 || r1.is_nan() {
        return Err(EvacError::domain("r1", r1, "[0, ∞)"));
    }
    if r2 < 0.0 || r2.is_nan() {
        return Err(EvacError::domain("r2", r2, "[0, ∞)"));
    }
    let sq = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * angle.cos();
    Ok(sq.max(0.0).sqrt())
}

/// Angle of the diametrically opposite boundary point.
pub fn antipode(angle: f64) -> f64 {
    normalize_angle(angle + PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn chord_examples() {
        assert!((chord_of_arc(PI).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(chord_of_arc(0.0).unwrap(), 0.0);
        let arc = 2.0 * (-2.0f64 / 4.0).acos();
        let expected = 2.0 * (1.0f64 - 4.0 / 16.0).sqrt();
        assert!((chord_of_arc(arc).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 1.732_05).abs() < 1e-5);
    }

    #[test]
    fn chord_domain() {
        assert!(chord_of_arc(-0.1).is_err());
        assert!(chord_of_arc(TAU + 1e-9).is_err());
        assert!(chord_of_arc(f64::NAN).is_err());
    }

    #[test]
    fn law_of_cosines_examples() {
        assert!((law_of_cosines(1.0, 1.0, PI).unwrap() - 2.0).abs() < 1e-15);
        for angle in [0.0, 1.0, 2.5, 6.0] {
            assert!((law_of_cosines(1.0, 0.0, angle).unwrap() - 1.0).abs() < 1e-15);
        }
        let d = law_of_cosines(1.0, 0.5, 2.0 * PI / 3.0).unwrap();
        // same triangle from coordinates
        let coords = Point::polar(1.0, 0.0).distance(Point::polar(0.5, 2.0 * PI / 3.0));
        assert!((d - coords).abs() < 1e-14);
        assert!((d - 1.75f64.sqrt()).abs() < 1e-14);
        assert!((d - 1.322_88).abs() < 1e-5);
        assert!(law_of_cosines(-1.0, 1.0, 0.0).is_err());
        assert!(law_of_cosines(1.0, -1e-3, 0.0).is_err());
    }

    #[test]
    fn normalize_wraps() {
        assert_eq!(normalize_angle(TAU), 0.0);
        assert_eq!(normalize_angle(-1e-300), 0.0);
        assert!((normalize_angle(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!(normalize_angle(7.0 * PI) < TAU);
    }

    proptest! {
        #[test]
        fn chord_symmetric(a in 0.0..=TAU) {
            let lhs = chord_of_arc(TAU - a).unwrap();
            let rhs = chord_of_arc(a).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn chord_matches_coordinates(a in 0.0..=TAU) {
            let d = Point::on_boundary(0.0).distance(Point::on_boundary(a));
            prop_assert!((chord_of_arc(a).unwrap() - d).abs() < 1e-12);
        }

        #[test]
        fn angular_distance_bounded(a in -20.0..20.0f64, b in -20.0..20.0f64) {
            let d = angular_distance(a, b);
            prop_assert!((0.0..=PI + 1e-12).contains(&d));
            prop_assert!((d - angular_distance(b, a)).abs() < 1e-9);
        }
    }
}
