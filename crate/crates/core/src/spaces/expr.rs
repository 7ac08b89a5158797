use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};

/// A space built from the families the capacity results cover.
///
/// Variant order is the fixed total order used to sort wedge and product
/// children: point, spheres by dimension, Moore spaces by degree then
/// group, `CP^n` by `n`, Eilenberg-MacLane spaces by degree then group,
/// products, wedges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceExpr {
    Point,
    /// `S^n`, `n >= 1`.
    Sphere(u32),
    /// `M(A, n)`, `n >= 2`.
    Moore { degree: u32, group: FgAbelianGroup },
    /// `CP^n`, `n >= 2`; `CP^1` is written `S^2`.
    ComplexProjective(u32),
    /// `K(A, n)`, `n >= 1`.
    EilenbergMacLane { degree: u32, group: FgAbelianGroup },
    /// At least two factors.
    Product(Vec<SpaceExpr>),
    /// At least one child.
    Wedge(Vec<SpaceExpr>),
}

use SpaceExpr::*;

impl SpaceExpr {
    pub fn sphere(n: u32) -> Result<Self> {
        let s = Sphere(n);
        s.validate()?;
        Ok(s)
    }

    pub fn moore(group: FgAbelianGroup, degree: u32) -> Result<Self> {
        let s = Moore { degree, group };
        s.validate()?;
        Ok(s)
    }

    pub fn eilenberg_maclane(group: FgAbelianGroup, degree: u32) -> Result<Self> {
        let s = EilenbergMacLane { degree, group };
        s.validate()?;
        Ok(s)
    }

    pub fn complex_projective(n: u32) -> Result<Self> {
        let s = ComplexProjective(n);
        s.validate()?;
        Ok(s)
    }

    pub fn wedge<I: IntoIterator<Item = SpaceExpr>>(children: I) -> Result<Self> {
        let s = Wedge(children.into_iter().collect());
        s.validate()?;
        Ok(s)
    }

    pub fn product<I: IntoIterator<Item = SpaceExpr>>(children: I) -> Result<Self> {
        let s = Product(children.into_iter().collect());
        s.validate()?;
        Ok(s)
    }

    /// Wedge of `count` copies of `S^dim`; the point when `count == 0`.
    pub fn sphere_bouquet(dim: u32, count: usize) -> Self {
        wedge_of(vec![Sphere(dim); count])
    }

    /// Checks the structural invariants of every node.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpace(msg));
        match self {
            Point => Ok(()),
            Sphere(0) => bad("sphere dimension must be >= 1".into()),
            Sphere(_) => Ok(()),
            Moore { degree, .. } if *degree < 2 => {
                bad(format!("Moore space degree must be >= 2, got {degree}"))
            }
            Moore { .. } => Ok(()),
            EilenbergMacLane { degree: 0, .. } => {
                bad("Eilenberg-MacLane degree must be >= 1".into())
            }
            EilenbergMacLane { .. } => Ok(()),
            ComplexProjective(n) if *n < 2 => {
                bad(format!("CP^{n} is not a separate constructor (CP^1 is S^2)"))
            }
            ComplexProjective(_) => Ok(()),
            Wedge(cs) if cs.is_empty() => bad("wedge needs at least one child".into()),
            Product(cs) if cs.len() < 2 => bad("product needs at least two factors".into()),
            Wedge(cs) | Product(cs) => cs.iter().try_for_each(SpaceExpr::validate),
        }
    }

    /// Normal form up to homotopy equivalence within the supported families:
    ///
    /// - `M(0, n)` and `K(0, n)` become the point;
    /// - `M(Z^r + T, n)` becomes `r` copies of `S^n` wedged with `M(T, n)`;
    /// - wedges are flattened, drop point children, merge Moore children of
    ///   equal degree into one, and sort their children;
    /// - products are flattened, drop point factors and sort their factors;
    /// - a wedge or product left with one child is that child, with none the
    ///   point.
    ///
    /// Idempotent.
    pub fn canonicalize(&self) -> SpaceExpr {
        match self {
            Point | Sphere(_) | ComplexProjective(_) => self.clone(),
            Moore { degree, group } => {
                let mut children = vec![Sphere(*degree); group.free_rank()];
                let torsion = group.torsion();
                if !torsion.is_trivial() {
                    children.push(Moore {
                        degree: *degree,
                        group: torsion,
                    });
                }
                wedge_of(children)
            }
            EilenbergMacLane { group, .. } if group.is_trivial() => Point,
            EilenbergMacLane { .. } => self.clone(),
            Wedge(cs) => {
                let mut flat = Vec::new();
                let mut moore: BTreeMap<u32, FgAbelianGroup> = BTreeMap::new();
                for c in cs {
                    match c.canonicalize() {
                        Point => {}
                        Wedge(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                flat.retain(|c| match c {
                    Moore { degree, group } => {
                        let slot = moore.entry(*degree).or_default();
                        *slot = slot.direct_sum(group);
                        false
                    }
                    _ => true,
                });
                flat.extend(
                    moore
                        .into_iter()
                        .map(|(degree, group)| Moore { degree, group }),
                );
                wedge_of(flat)
            }
            Product(cs) => {
                let mut flat = Vec::new();
                for c in cs {
                    match c.canonicalize() {
                        Point => {}
                        Product(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                flat.sort();
                match flat.len() {
                    0 => Point,
                    1 => flat.pop().unwrap(),
                    _ => Product(flat),
                }
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Cellular dimension of the standard model; `None` when the space is
    /// infinite-dimensional (a nontrivial Eilenberg-MacLane factor).
    pub fn dimension(&self) -> Option<u32> {
        match self {
            Point => Some(0),
            Sphere(n) => Some(*n),
            Moore { group, .. } if group.is_trivial() => Some(0),
            Moore { degree, group } if group.is_torsion_free() => Some(*degree),
            Moore { degree, .. } => Some(degree + 1),
            ComplexProjective(n) => Some(2 * n),
            EilenbergMacLane { group, .. } if group.is_trivial() => Some(0),
            EilenbergMacLane { .. } => None,
            Wedge(cs) => cs.iter().map(SpaceExpr::dimension).try_fold(0, |acc, d| Some(acc.max(d?))),
            Product(cs) => cs.iter().map(SpaceExpr::dimension).try_fold(0, |acc, d| Some(acc + d?)),
        }
    }

    /// Rank of the fundamental group, which must be free of finite rank.
    ///
    /// Each `S^1` (and `K(Z, 1)`) contributes one free generator to a wedge.
    /// A product has free fundamental group only when at most one factor is
    /// not simply connected.
    pub fn fundamental_group_free_rank(&self) -> Result<usize> {
        match self {
            Point | Moore { .. } | ComplexProjective(_) => Ok(0),
            Sphere(1) => Ok(1),
            Sphere(_) => Ok(0),
            // pi_1 of K(A, 1) is A, and an abelian group is free only in rank <= 1
            EilenbergMacLane { degree: 1, group } => {
                if group.is_trivial() {
                    Ok(0)
                } else if *group == FgAbelianGroup::integers() {
                    Ok(1)
                } else {
                    Err(Error::UnsupportedSpace(format!(
                        "fundamental group of {self} is {group}, which is not free"
                    )))
                }
            }
            EilenbergMacLane { .. } => Ok(0),
            Wedge(cs) => cs.iter().map(SpaceExpr::fundamental_group_free_rank).sum(),
            Product(cs) => {
                let ranks = cs
                    .iter()
                    .map(SpaceExpr::fundamental_group_free_rank)
                    .collect::<Result<Vec<_>>>()?;
                let nontrivial: Vec<usize> = ranks.into_iter().filter(|&r| r > 0).collect();
                match nontrivial.as_slice() {
                    [] => Ok(0),
                    [r] => Ok(*r),
                    _ => Err(Error::UnsupportedSpace(format!(
                        "fundamental group of {self} is a product of nontrivial free groups, which is not free"
                    ))),
                }
            }
        }
    }
}

/// Canonical wedge of already-canonical, non-wedge, non-point children.
pub(crate) fn wedge_of(mut children: Vec<SpaceExpr>) -> SpaceExpr {
    children.sort();
    match children.len() {
        0 => Point,
        1 => children.pop().unwrap(),
        _ => Wedge(children),
    }
}

/// Renders in the space literal grammar. `x` binds tighter than `v`, so a
/// wedge inside a product is parenthesized, as is any node nested directly
/// inside a node of the same kind.
impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point => f.write_str("*"),
            Sphere(n) => write!(f, "S^{n}"),
            Moore { degree, group } => write!(f, "M({group}, {degree})"),
            ComplexProjective(n) => write!(f, "CP^{n}"),
            EilenbergMacLane { degree, group } => write!(f, "K({group}, {degree})"),
            Wedge(cs) => join(f, cs, " v ", |c| matches!(c, Wedge(_))),
            Product(cs) => join(f, cs, " x ", |c| matches!(c, Wedge(_) | Product(_))),
        }
    }
}

fn join(
    f: &mut fmt::Formatter<'_>,
    children: &[SpaceExpr],
    sep: &str,
    needs_parens: impl Fn(&SpaceExpr) -> bool,
) -> fmt::Result {
    for (i, c) in children.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        if needs_parens(c) {
            write!(f, "({c})")?;
        } else {
            write!(f, "{c}")?;
        }
    }
    Ok(())
}

impl Serialize for SpaceExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
