//! Points, angle sets and time-parameterized robot paths on the unit disk.

mod arcset;
mod geometry;
mod path;

pub use arcset::{ArcSet, CircularArc, MERGE_GAP};
pub use geometry::{
    angular_distance, antipode, chord_of_arc, law_of_cosines, normalize_angle, Point,
    DEFAULT_EPS_BOUNDARY,
};
pub use path::{MotionPrimitive, Segment, Trajectory, TrajectoryBuilder};
