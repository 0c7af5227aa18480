//! Coding of filled Julia sets by the tree of preimages of the unit ball.

mod cantor;
mod code;
mod orbit;
mod periodic;
mod sigma;

pub use cantor::{cantor_test, CantorVerdict};
pub use code::{coding_word, Code, CodeStatus, CodingWord};
pub use orbit::{orbit, OrbitTrace};
pub use periodic::{periodic_code_ball, PeriodicBall, MAX_CHAIN_DEPTH};
pub use sigma::{check_normalization, sigma_level, SigmaCell, SigmaOptions, SigmaTree};
