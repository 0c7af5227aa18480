//! Polynomials over `Q`, over the scalar tower, and over `F_p`.

pub mod fp;
mod newton;
mod qpoly;
mod resultant;
mod spoly;

pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use qpoly::QPoly;
pub use resultant::{determinant, resultant_homogeneous, sylvester_matrix};
pub use spoly::ScalarPoly;
