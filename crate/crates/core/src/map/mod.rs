//! Action of polynomials and rational maps on points, balls and cuts.

mod action;
mod cycles;
mod fixed;
mod image;
mod linearize;
mod preimage;
mod reduction;
mod simple;
mod spec;

pub use action::{tree_action, ActionResult};
pub use cycles::{residual_cycles, LiftClass, ResidualCycle};
pub use fixed::{classify, fixed_points, lefschetz_sum, FixedClass, FixedPointRecord, FixedPoints, IrrationalFixed};
pub use image::{image_ball, max_preimage_ball, sup_on_ball, taylor_shift, BallImage};
pub use linearize::{linearize, Linearization};
pub use preimage::{preimage_cells, preimage_cells_with, Certificate, PreimageCell, PreimageResult, DEFAULT_SEARCH_STEPS, MAX_STALL};
pub use reduction::{discriminant_delta, ff_eval, reduce_map, ResidualMap};
pub use simple::{is_simple_polynomial, Simplicity};
pub use spec::{normalize, RationalMapSpec};
