//! Exact p-adic dynamics on the projective line and its Berkovich tree.
//!
//! All arithmetic is exact: scalars are finite sums of rational multiples of
//! fractional powers of `p`, radii are stored as rational exponents, and no
//! predicate ever touches a float.

pub mod error;
pub mod map;
pub mod padic;
pub mod poly;
pub mod symbolic;
pub mod tree;

pub use error::{Error, Result};
pub use padic::{PadicScalar, QExp, Residue, Valuation, Q};
