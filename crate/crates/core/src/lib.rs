//! Borsuk capacity (the number of homotopy types a space dominates) for
//! wedges of spheres, Moore spaces, Eilenberg-MacLane spaces, `CP^2` and
//! finite products, together with the homology and abelian-group algebra
//! needed to compute and compare them.

pub mod abelian;
pub mod capacity;
pub mod cli;
pub mod error;
pub mod spaces;

pub use abelian::{FgAbelianGroup, IntMatrix};
pub use error::{Error, Result};
