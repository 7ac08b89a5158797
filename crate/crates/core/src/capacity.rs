//! Capacity `C(X)`: the number of homotopy types dominated by `X`.
//!
//! Values are only reported where a classification is known:
//!
//! - wedges of spheres, `S^1` included: `prod_n (i_n + 1)` over the number
//!   `i_n` of `n`-spheres, the dominated types being the sub-wedges;
//! - Moore spaces `M(A, n)` and Eilenberg-MacLane spaces `K(A, n)`: the
//!   number of direct-summand classes of `A`;
//! - wedges of Moore spaces in distinct degrees: the product of the
//!   per-degree summand counts (reported as an extension);
//! - `CP^2`: 2 (the point and `CP^2` itself).
//!
//! Products get a lower bound from their retracts (sub-products). Anything
//! else is [`ExtendedCount::Unknown`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::abelian::{count_direct_summands, enumerate_direct_summands, FgAbelianGroup};
use crate::error::{Error, Result};
use crate::spaces::{wedge_of, SpaceExpr};

/// Products with more factors than this are not searched for retracts.
const MAX_PRODUCT_FACTORS: usize = 16;

const DEFAULT_COMPARISON_BOUND: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedCount {
    Finite(BigUint),
    LowerBound(BigUint),
    Unknown,
}

impl ExtendedCount {
    pub fn finite(n: u64) -> Self {
        ExtendedCount::Finite(n.into())
    }

    pub fn lower_bound(n: u64) -> Self {
        ExtendedCount::LowerBound(n.into())
    }

    /// The exact value, if known.
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            ExtendedCount::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&BigUint> {
        match self {
            ExtendedCount::Finite(n) | ExtendedCount::LowerBound(n) => Some(n),
            ExtendedCount::Unknown => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedCount::Finite(_))
    }
}

impl fmt::Display for ExtendedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedCount::Finite(n) => write!(f, "Finite({n})"),
            ExtendedCount::LowerBound(n) => write!(f, "LowerBound({n})"),
            ExtendedCount::Unknown => f.write_str("Unknown"),
        }
    }
}

impl Serialize for ExtendedCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExtendedCount", 2)?;
        let kind = match self {
            ExtendedCount::Finite(_) => "finite",
            ExtendedCount::LowerBound(_) => "lower_bound",
            ExtendedCount::Unknown => "unknown",
        };
        s.serialize_field("kind", kind)?;
        s.serialize_field("value", &self.value().map(Count))?;
        s.end()
    }
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub(crate) struct Count<'a>(pub &'a BigUint);

impl Serialize for Count<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(n) => serializer.serialize_u64(n),
            None => serializer.collect_str(self.0),
        }
    }
}

/// Which classification produced a capacity value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Point,
    SphereWedge,
    MooreSpace,
    /// Wedge of Moore spaces of distinct degrees, product of summand counts.
    MooreWedge,
    EilenbergMacLane,
    ComplexProjectivePlane,
    ProductRetracts,
    Unsettled,
}

impl Rule {
    pub fn description(self) -> &'static str {
        match self {
            Rule::Point => "the point dominates only itself",
            Rule::SphereWedge => "wedge of spheres: product of (multiplicity + 1) over dimensions",
            Rule::MooreSpace => "Moore space M(A, n): number of direct-summand classes of A",
            Rule::MooreWedge => {
                "wedge of Moore spaces of distinct degrees: product of summand counts (extension)"
            }
            Rule::EilenbergMacLane => "K(A, n): number of direct-summand classes of A",
            Rule::ComplexProjectivePlane => "CP^2 dominates only the point and itself",
            Rule::ProductRetracts => {
                "product: homology-distinct sub-products are retracts (lower bound)"
            }
            Rule::Unsettled => "no classification is known for this space",
        }
    }

    /// The formula is a natural extension of the proved cases rather than
    /// a proved result.
    pub fn is_extension(self) -> bool {
        self == Rule::MooreWedge
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacityReport {
    /// Canonical form of the input.
    pub space: SpaceExpr,
    pub capacity: ExtendedCount,
    pub rule: Rule,
}

pub fn capacity(x: &SpaceExpr) -> ExtendedCount {
    capacity_report(x).capacity
}

pub fn capacity_report(x: &SpaceExpr) -> CapacityReport {
    let space = x.canonicalize();
    let (capacity, rule) = dispatch(&space);
    CapacityReport { space, capacity, rule }
}

fn dispatch(x: &SpaceExpr) -> (ExtendedCount, Rule) {
    let unknown = (ExtendedCount::Unknown, Rule::Unsettled);
    if x.validate().is_err() {
        return unknown;
    }
    match x {
        SpaceExpr::Point => (ExtendedCount::finite(1), Rule::Point),
        SpaceExpr::ComplexProjective(2) => (ExtendedCount::finite(2), Rule::ComplexProjectivePlane),
        SpaceExpr::ComplexProjective(_) => unknown,
        SpaceExpr::EilenbergMacLane { group, .. } => (
            ExtendedCount::Finite(count_direct_summands(group)),
            Rule::EilenbergMacLane,
        ),
        SpaceExpr::Product(factors) => {
            match distinguishable_subproducts(factors, default_bound(&[x])) {
                Ok(reps) => (
                    ExtendedCount::LowerBound(BigUint::from(reps.len())),
                    Rule::ProductRetracts,
                ),
                Err(_) => unknown,
            }
        }
        _ => match moore_blocks(x) {
            Some((blocks, rule)) => {
                let count = blocks
                    .values()
                    .map(count_direct_summands)
                    .fold(BigUint::one(), |acc, c| acc * c);
                (ExtendedCount::Finite(count), rule)
            }
            None => unknown,
        },
    }
}

/// For a canonical wedge of spheres and Moore spaces, the group carried in
/// each degree: `Z^(i_n)` plus the torsion of the Moore child of degree `n`.
/// `None` outside that family, and when circles meet torsion.
fn moore_blocks(x: &SpaceExpr) -> Option<(BTreeMap<u32, FgAbelianGroup>, Rule)> {
    let children = match x {
        SpaceExpr::Wedge(cs) => cs.as_slice(),
        other => std::slice::from_ref(other),
    };
    let mut blocks: BTreeMap<u32, FgAbelianGroup> = BTreeMap::new();
    for c in children {
        let (degree, group) = match c {
            SpaceExpr::Sphere(n) => (*n, FgAbelianGroup::integers()),
            SpaceExpr::Moore { degree, group } => (*degree, group.clone()),
            _ => return None,
        };
        let slot = blocks.entry(degree).or_default();
        *slot = slot.direct_sum(&group);
    }
    let torsion = blocks.values().any(|g| !g.is_torsion_free());
    let rule = match (torsion, blocks.len()) {
        (false, _) => Rule::SphereWedge,
        // circles wedged with torsion Moore spaces are not classified
        (true, _) if blocks.contains_key(&1) => return None,
        (true, 1) => Rule::MooreSpace,
        (true, _) => Rule::MooreWedge,
    };
    Some((blocks, rule))
}

/// Canonical forms of every homotopy type dominated by `x`, sorted.
pub fn enumerate_dominated(x: &SpaceExpr) -> Result<Vec<SpaceExpr>> {
    let report = capacity_report(x);
    let space = &report.space;
    let mut out = match report.rule {
        Rule::Point => vec![SpaceExpr::Point],
        Rule::ComplexProjectivePlane => vec![SpaceExpr::Point, space.clone()],
        Rule::EilenbergMacLane => {
            let SpaceExpr::EilenbergMacLane { degree, group } = space else {
                unreachable!("rule matches the canonical form")
            };
            enumerate_direct_summands(group)
                .into_iter()
                .map(|group| SpaceExpr::EilenbergMacLane { degree: *degree, group }.canonicalize())
                .collect()
        }
        Rule::SphereWedge | Rule::MooreSpace | Rule::MooreWedge => {
            let (blocks, _) = moore_blocks(space).expect("rule matches the canonical form");
            sub_wedges(&blocks)
        }
        Rule::ProductRetracts | Rule::Unsettled => {
            return Err(Error::UnsupportedCapacity(format!(
                "the dominated homotopy types of {space} are not classified ({})",
                report.capacity
            )))
        }
    };
    out.sort();
    Ok(out)
}

/// One wedge per choice of a direct summand in every degree.
fn sub_wedges(blocks: &BTreeMap<u32, FgAbelianGroup>) -> Vec<SpaceExpr> {
    let choices: Vec<(u32, Vec<FgAbelianGroup>)> = blocks
        .iter()
        .map(|(&d, g)| (d, enumerate_direct_summands(g)))
        .collect();
    let mut out = Vec::new();
    let mut index = vec![0usize; choices.len()];
    loop {
        let mut parts = Vec::new();
        for ((degree, options), &i) in choices.iter().zip(&index) {
            let group = &options[i];
            let piece = if *degree == 1 {
                SpaceExpr::sphere_bouquet(1, group.free_rank())
            } else {
                SpaceExpr::Moore { degree: *degree, group: group.clone() }.canonicalize()
            };
            match piece {
                SpaceExpr::Point => {}
                SpaceExpr::Wedge(cs) => parts.extend(cs),
                other => parts.push(other),
            }
        }
        out.push(wedge_of(parts));

        let mut k = 0;
        loop {
            if k == index.len() {
                return out;
            }
            index[k] += 1;
            if index[k] < choices[k].1.len() {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}

/// `(r + 1)(s + 1)`: capacity of a 2-dimensional complex with free
/// fundamental group of rank `r` and `H_2` of rank `s`, which has the
/// homotopy type of `r` circles wedged with `s` two-spheres.
pub fn capacity_two_complex(r: u64, s: u64) -> ExtendedCount {
    ExtendedCount::Finite(BigUint::from(r + 1) * BigUint::from(s + 1))
}

/// Sub-products of `factors` (the empty one being the point) that are
/// pairwise distinct in homology through degree `bound`, one representative
/// per homology profile. Each is a retract of the full product, so the
/// count is a lower bound for its capacity.
pub fn distinguishable_subproducts(factors: &[SpaceExpr], bound: u32) -> Result<Vec<SpaceExpr>> {
    if factors.len() > MAX_PRODUCT_FACTORS {
        return Err(Error::UnsupportedCapacity(format!(
            "products of more than {MAX_PRODUCT_FACTORS} factors"
        )));
    }
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0u32..(1 << factors.len()) {
        let chosen: Vec<SpaceExpr> = factors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| f.clone())
            .collect();
        let sub = match chosen.len() {
            0 => SpaceExpr::Point,
            1 => chosen[0].canonicalize(),
            _ => SpaceExpr::Product(chosen).canonicalize(),
        };
        let profile = sub.homology_profile(bound)?;
        if seen.insert(profile.groups().to_vec()) {
            reps.push(sub);
        }
    }
    reps.sort();
    Ok(reps)
}

/// `max(10, largest finite dimension among the inputs)`.
pub fn default_bound(spaces: &[&SpaceExpr]) -> u32 {
    spaces
        .iter()
        .filter_map(|s| s.dimension())
        .fold(DEFAULT_COMPARISON_BOUND, u32::max)
}

/// Degreewise comparison through `bound`. Returns `(agrees, exact)`, where
/// `exact` means both spaces have vanishing homology above `bound`, so that
/// agreement holds in every degree.
pub fn homology_equivalent(x: &SpaceExpr, y: &SpaceExpr, bound: u32) -> Result<(bool, bool)> {
    let px = x.homology_profile(bound)?;
    let py = y.homology_profile(bound)?;
    Ok((
        px.agrees_with(&py),
        px.exact_above_bound() && py.exact_above_bound(),
    ))
}

/// Two spaces with the same homology but different capacities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub space_x: SpaceExpr,
    pub space_y: SpaceExpr,
    pub compared_up_to: u32,
    pub homology_agrees: bool,
    pub exact_comparison: bool,
    pub capacity_x: ExtendedCount,
    pub capacity_y: ExtendedCount,
    pub is_counterexample: bool,
    pub notes: Vec<String>,
}

pub fn borsuk_report(x: &SpaceExpr, y: &SpaceExpr, bound: u32) -> Result<CounterexampleReport> {
    let (homology_agrees, exact_comparison) = homology_equivalent(x, y, bound)?;
    let rx = capacity_report(x);
    let ry = capacity_report(y);
    let is_counterexample = homology_agrees
        && exact_comparison
        && matches!(
            (&rx.capacity, &ry.capacity),
            (ExtendedCount::Finite(a), ExtendedCount::Finite(b)) if a != b
        );

    let mut notes = Vec::new();
    if !exact_comparison {
        notes.push(format!("homology verified up to degree {bound} only"));
    }
    for (name, r) in [("X", &rx), ("Y", &ry)] {
        if r.rule.is_extension() {
            notes.push(format!("C({name}) uses an extension: {}", r.rule.description()));
        }
    }
    Ok(CounterexampleReport {
        space_x: rx.space,
        space_y: ry.space,
        compared_up_to: bound,
        homology_agrees,
        exact_comparison,
        capacity_x: rx.capacity,
        capacity_y: ry.capacity,
        is_counterexample,
        notes,
    })
}
