//! Space expressions and their homology.

mod expr;
mod homology;

pub use expr::SpaceExpr;
pub(crate) use expr::wedge_of;
pub use homology::HomologyProfile;
