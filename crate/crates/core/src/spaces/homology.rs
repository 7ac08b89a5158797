//! Integral homology of supported spaces.
//!
//! Supported: point, spheres, wedges, Moore spaces, `CP^n`, `K(Z/m, 1)`,
//! `K(Z, 2)` (homology of `CP^infinity`), and products of supported
//! factors via the Kunneth formula with its Tor term.

use serde::Serialize;

use super::expr::SpaceExpr;
use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};

/// `H_0 .. H_bound` of a space, with a flag recording whether every group
/// above `bound` is known to vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyProfile {
    groups: Vec<FgAbelianGroup>,
    bound: u32,
    exact_above_bound: bool,
}

impl HomologyProfile {
    pub fn groups(&self) -> &[FgAbelianGroup] {
        &self.groups
    }

    pub fn get(&self, degree: u32) -> Option<&FgAbelianGroup> {
        self.groups.get(degree as usize)
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn exact_above_bound(&self) -> bool {
        self.exact_above_bound
    }

    /// Degreewise isomorphism over the common range.
    pub fn agrees_with(&self, other: &HomologyProfile) -> bool {
        self.groups
            .iter()
            .zip(&other.groups)
            .all(|(a, b)| a.is_isomorphic(b))
    }
}

impl SpaceExpr {
    pub fn homology(&self, degree: u32) -> Result<FgAbelianGroup> {
        Ok(homology_table(self, degree)?.swap_remove(degree as usize))
    }

    pub fn homology_profile(&self, bound: u32) -> Result<HomologyProfile> {
        let groups = homology_table(self, bound)?;
        let exact_above_bound = self.dimension().is_some_and(|d| bound >= d);
        Ok(HomologyProfile {
            groups,
            bound,
            exact_above_bound,
        })
    }
}

/// `H_0 .. H_bound`, always of length `bound + 1`.
fn homology_table(x: &SpaceExpr, bound: u32) -> Result<Vec<FgAbelianGroup>> {
    x.validate()?;
    let len = bound as usize + 1;
    let z = FgAbelianGroup::integers;
    let zero = FgAbelianGroup::trivial;
    // Z in degree 0, `f(n)` above.
    let table = |f: &dyn Fn(u32) -> FgAbelianGroup| {
        (0..=bound)
            .map(|n| if n == 0 { z() } else { f(n) })
            .collect::<Vec<_>>()
    };

    let out = match x {
        SpaceExpr::Point => table(&|_| zero()),
        SpaceExpr::Sphere(k) => table(&|n| if n == *k { z() } else { zero() }),
        SpaceExpr::Moore { degree, group } => {
            table(&|n| if n == *degree { group.clone() } else { zero() })
        }
        SpaceExpr::ComplexProjective(k) => {
            table(&|n| if n % 2 == 0 && n <= 2 * k { z() } else { zero() })
        }
        SpaceExpr::EilenbergMacLane { group, .. } if group.is_trivial() => table(&|_| zero()),
        SpaceExpr::EilenbergMacLane { degree: 1, group } if group.as_finite_cyclic().is_some() => {
            table(&|n| if n % 2 == 1 { group.clone() } else { zero() })
        }
        SpaceExpr::EilenbergMacLane { degree: 2, group } if *group == z() => {
            table(&|n| if n % 2 == 0 { z() } else { zero() })
        }
        SpaceExpr::EilenbergMacLane { .. } => {
            return Err(Error::UnsupportedSpace(format!(
                "homology of {x} is not available (only K(Z/m, 1) and K(Z, 2) are supported)"
            )))
        }
        SpaceExpr::Wedge(children) => {
            let tables = children
                .iter()
                .map(|c| homology_table(c, bound))
                .collect::<Result<Vec<_>>>()?;
            table(&|n| FgAbelianGroup::direct_sum_all(tables.iter().map(|t| &t[n as usize])))
        }
        SpaceExpr::Product(children) => {
            let mut acc = homology_table(&children[0], bound)?;
            for c in &children[1..] {
                acc = kunneth(&acc, &homology_table(c, bound)?);
            }
            acc
        }
    };
    debug_assert_eq!(out.len(), len);
    Ok(out)
}

/// `H_n(X x Y) = sum_{i+j=n} H_i X (x) H_j Y  +  sum_{i+j=n-1} Tor(H_i X, H_j Y)`
fn kunneth(x: &[FgAbelianGroup], y: &[FgAbelianGroup]) -> Vec<FgAbelianGroup> {
    let len = x.len().min(y.len());
    (0..len)
        .map(|n| {
            let tensors = (0..=n).map(|i| x[i].tensor(&y[n - i]));
            let tors = (0..n).map(|i| x[i].tor(&y[n - 1 - i]));
            let parts: Vec<_> = tensors.chain(tors).collect();
            FgAbelianGroup::direct_sum_all(&parts)
        })
        .collect()
}
