//! Finitely generated abelian groups and the integer linear algebra behind
//! them.

mod group;
mod matrix;
mod snf;
mod summands;

pub use group::{factorize, FgAbelianGroup, PrimaryDecomposition};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
pub use summands::{
    brute_force_summands, count_direct_summands, enumerate_direct_summands, groups_of_order,
    DEFAULT_BRUTE_FORCE_LIMIT,
};
