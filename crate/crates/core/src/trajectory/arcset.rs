use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::geometry::normalize_angle;

/// Intervals closer than this are merged.
pub const MERGE_GAP: f64 = 1e-12;

/// A finite union of half-open angle intervals `[a, b)` on the unit circle.
///
/// Intervals are kept disjoint and sorted with `0 <= a < b <= 2π`; an interval
/// crossing angle 0 is stored as two pieces. The full circle is `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ArcSet {
    arcs: Vec<(f64, f64)>,
}

/// A connected piece of the circle given by its counterclockwise start and length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularArc {
    pub start: f64,
    pub length: f64,
}

impl CircularArc {
    pub fn end(&self) -> f64 {
        self.start + self.length
    }
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        ArcSet {
            arcs: vec![(0.0, TAU)],
        }
    }

    /// Builds a set from `(start, length)` pairs; lengths are swept counterclockwise.
    pub fn from_arcs<I: IntoIterator<Item = (f64, f64)>>(arcs: I) -> Self {
        let mut set = ArcSet::empty();
        for (start, length) in arcs {
            set.insert(start, length);
        }
        set
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.total_length() >= TAU - MERGE_GAP
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(|(a, b)| b - a).sum()
    }

    /// Adds the arc swept counterclockwise from `start` over `length`.
    /// A negative length sweeps clockwise.
    pub fn insert(&mut self, start: f64, length: f64) {
        if !length.is_finite() || !start.is_finite() {
            return;
        }
        let (start, length) = if length < 0.0 {
            (start + length, -length)
        } else {
            (start, length)
        };
        if length <= 0.0 {
            return;
        }
        if length >= TAU {
            *self = ArcSet::full();
            return;
        }
        let a = normalize_angle(start);
        let b = a + length;
        if b > TAU {
            self.insert_linear(a, TAU);
            self.insert_linear(0.0, b - TAU);
        } else {
            self.insert_linear(a, b);
        }
    }

    fn insert_linear(&mut self, a: f64, b: f64) {
        self.arcs.push((a, b.min(TAU)));
        self.arcs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(self.arcs.len());
        for &(a, b) in &self.arcs {
            match merged.last_mut() {
                Some(last) if a <= last.1 + MERGE_GAP => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        // closes a full circle that only misses slivers at the seam
        if merged.len() == 1 && merged[0].0 <= MERGE_GAP && merged[0].1 >= TAU - MERGE_GAP {
            merged[0] = (0.0, TAU);
        }
        self.arcs = merged;
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        let mut out = self.clone();
        for &(a, b) in &other.arcs {
            out.insert_linear(a, b);
        }
        out
    }

    /// Membership of the angle in the half-open intervals.
    pub fn contains(&self, angle: f64) -> bool {
        let t = normalize_angle(angle);
        self.arcs.iter().any(|&(a, b)| a <= t && t < b)
    }

    /// Every point of `self` belongs to `other`, up to `tol` at interval ends.
    pub fn is_subset_of(&self, other: &ArcSet, tol: f64) -> bool {
        self.arcs.iter().all(|&(a, b)| {
            other
                .arcs
                .iter()
                .any(|&(c, d)| c <= a + tol && b <= d + tol)
        })
    }

    /// Connected components of the set, joining pieces that meet across angle 0.
    pub fn components(&self) -> Vec<CircularArc> {
        if self.is_full() {
            return vec![CircularArc {
                start: 0.0,
                length: TAU,
            }];
        }
        let mut comps: Vec<CircularArc> = self
            .arcs
            .iter()
            .map(|&(a, b)| CircularArc {
                start: a,
                length: b - a,
            })
            .collect();
        if comps.len() > 1 {
            let first = comps[0];
            let last = comps[comps.len() - 1];
            if first.start <= MERGE_GAP && last.end() >= TAU - MERGE_GAP {
                comps.pop();
                comps[0] = CircularArc {
                    start: last.start,
                    length: last.length + first.length,
                };
                comps.rotate_left(1);
            }
        }
        comps
    }

    /// Closed components of the complement (the unexplored boundary).
    pub fn complement(&self) -> Vec<CircularArc> {
        if self.arcs.is_empty() {
            return vec![CircularArc {
                start: 0.0,
                length: TAU,
            }];
        }
        if self.is_full() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for w in self.arcs.windows(2) {
            let gap = w[1].0 - w[0].1;
            if gap > 0.0 {
                out.push(CircularArc {
                    start: w[0].1,
                    length: gap,
                });
            }
        }
        let first = self.arcs[0].0;
        let last = self.arcs[self.arcs.len() - 1].1;
        let wrap = first + TAU - last;
        if wrap > MERGE_GAP {
            out.push(CircularArc {
                start: normalize_angle(last),
                length: wrap,
            });
        }
        out.sort_by(|x, y| x.start.total_cmp(&y.start));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn insert_wraps_across_zero() {
        let s = ArcSet::from_arcs([(TAU - 0.5, 1.0)]);
        assert_eq!(s.intervals().len(), 2);
        assert!((s.total_length() - 1.0).abs() < 1e-12);
        assert!(s.contains(0.2));
        assert!(s.contains(TAU - 0.2));
        assert!(!s.contains(1.0));
        assert_eq!(s.components().len(), 1);
    }

    #[test]
    fn clockwise_sweep() {
        let s = ArcSet::from_arcs([(0.0, -1.0)]);
        assert!(s.contains(TAU - 0.5));
        assert!((s.total_length() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn abutting_intervals_merge() {
        let s = ArcSet::from_arcs([(0.0, 1.0), (1.0 + 1e-13, 1.0)]);
        assert_eq!(s.intervals().len(), 1);
        let s = ArcSet::from_arcs([(0.0, PI), (PI, PI)]);
        assert!(s.is_full());
        assert!(s.complement().is_empty());
    }

    #[test]
    fn complement_of_two_arcs() {
        let s = ArcSet::from_arcs([(0.0, 1.0), (PI, 1.0)]);
        let c = s.complement();
        assert_eq!(c.len(), 2);
        assert!((c[0].start - 1.0).abs() < 1e-15);
        assert!((c[0].length - (PI - 1.0)).abs() < 1e-12);
        assert!((c[1].start - (PI + 1.0)).abs() < 1e-12);
        assert!((c[1].length - (PI - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn complement_of_empty_is_circle() {
        let c = ArcSet::empty().complement();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].length, TAU);
    }

    #[test]
    fn long_sweep_is_full() {
        let s = ArcSet::from_arcs([(1.0, 7.0)]);
        assert!(s.is_full());
        assert_eq!(s.intervals(), &[(0.0, TAU)]);
    }

    proptest! {
        #[test]
        fn union_measure_bounded(arcs in proptest::collection::vec((0.0..TAU, 0.0..3.0f64), 0..8)) {
            let s = ArcSet::from_arcs(arcs.iter().copied());
            let total: f64 = arcs.iter().map(|a| a.1).sum();
            prop_assert!(s.total_length() <= total.min(TAU) + 1e-9);
            for w in s.intervals().windows(2) {
                prop_assert!(w[0].1 < w[1].0);
            }
            let comp: f64 = s.complement().iter().map(|c| c.length).sum();
            prop_assert!((comp + s.total_length() - TAU).abs() < 1e-9);
        }

        #[test]
        fn inserted_points_are_members(start in 0.0..TAU, len in 1e-6..3.0f64, frac in 0.0..1.0f64) {
            let s = ArcSet::from_arcs([(start, len)]);
            let probe = start + frac * len * 0.999;
            prop_assert!(s.contains(probe));
        }
    }
}
