//! Ultrametric balls, cuts of the Berkovich line and their metrics.

mod affinoid;
mod ball;
mod point;

pub use affinoid::Affinoid;
pub use ball::{ball_relation, Ball, BallKind, Closure, Relation};
pub use point::{branch_direction, chordal_dist, join, median, tree_dist, TreePoint};
