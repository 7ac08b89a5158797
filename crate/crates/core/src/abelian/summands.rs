//! Direct summands of finitely generated abelian groups, up to isomorphism.
//!
//! By uniqueness of the decomposition into indecomposables (`Z` and the
//! `Z/p^e`), a direct summand of `Z^r + sum Z/p^e^(m_pe)` is the same kind of
//! sum with `r' <= r` and `m'_pe <= m_pe`, and every such choice occurs.
//! Hence the class count is `(r + 1) * prod (m_pe + 1)`.
//!
//! [`brute_force_summands`] checks this against the definition for small
//! finite groups: enumerate subgroups, keep the ones with a complement.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use super::group::{factorize, FgAbelianGroup};
use crate::error::{Error, Result};

pub const DEFAULT_BRUTE_FORCE_LIMIT: u64 = 256;

/// Number of isomorphism classes of direct summands of `a`.
pub fn count_direct_summands(a: &FgAbelianGroup) -> BigUint {
    let primary = a.primary_decomposition();
    primary
        .components
        .values()
        .fold(BigUint::from(a.free_rank() + 1), |acc, &m| acc * (m + 1))
}

/// Every direct-summand class of `a`, sorted by the group ordering.
pub fn enumerate_direct_summands(a: &FgAbelianGroup) -> Vec<FgAbelianGroup> {
    let primary = a.primary_decomposition();
    let blocks: Vec<(BigInt, usize)> = primary
        .components
        .iter()
        .map(|((p, e), &m)| (num_traits::pow(p.clone(), *e as usize), m))
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; blocks.len()];
    for free in 0..=a.free_rank() {
        loop {
            let torsion = blocks
                .iter()
                .zip(&choice)
                .flat_map(|((q, _), &k)| std::iter::repeat_n(q.clone(), k));
            out.push(FgAbelianGroup::from_parts(free, torsion));
            if !advance(&mut choice, blocks.iter().map(|(_, m)| *m)) {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Odometer step over `0..=limit_i`; false once it wraps around.
fn advance(choice: &mut [usize], limits: impl Iterator<Item = usize>) -> bool {
    for (c, limit) in choice.iter_mut().zip(limits) {
        if *c < limit {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

/// All isomorphism classes of abelian groups of order `n`, one per choice
/// of a partition of each prime exponent. Sorted by the group ordering.
pub fn groups_of_order(n: u64) -> Vec<FgAbelianGroup> {
    assert!(n >= 1);
    let mut acc: Vec<Vec<BigInt>> = vec![Vec::new()];
    for (p, e) in factorize(&BigInt::from(n)) {
        let mut next = Vec::new();
        for part in partitions(e, e) {
            for prev in &acc {
                let mut t = prev.clone();
                t.extend(part.iter().map(|&k| num_traits::pow(p.clone(), k as usize)));
                next.push(t);
            }
        }
        acc = next;
    }
    let mut out: Vec<_> = acc
        .into_iter()
        .map(|t| FgAbelianGroup::from_parts(0, t))
        .collect();
    out.sort();
    out
}

fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Direct-summand classes of a finite group, computed from the definition.
///
/// The group is materialized as tuples in `Z/d1 x ... x Z/dk`; subgroups are
/// enumerated by closing `{0}` under adjoining single elements, and a
/// subgroup `H` is a summand when some subgroup `K` has `|H||K| = |A|` and
/// `H n K = 0`. Classes are identified from element-order counts, without
/// going through Smith normal form or the primary decomposition.
pub fn brute_force_summands(a: &FgAbelianGroup, limit: u64) -> Result<Vec<FgAbelianGroup>> {
    let too_big = || Error::SizeLimit {
        group: a.to_string(),
        limit,
    };
    let order = a.order().ok_or_else(too_big)?;
    let order = order.to_u64().filter(|&n| n <= limit).ok_or_else(too_big)?;
    let finite = FiniteGroup::new(
        a.invariant_factors()
            .iter()
            .map(|d| d.to_u64().expect("bounded by the order"))
            .collect(),
    );
    debug_assert_eq!(finite.order() as u64, order);

    let subgroups = finite.subgroups();
    let mut by_size: BTreeMap<usize, Vec<&Bits>> = BTreeMap::new();
    for h in &subgroups {
        by_size.entry(h.count()).or_default().push(h);
    }
    let mut by_class: BTreeMap<FgAbelianGroup, Vec<&Bits>> = BTreeMap::new();
    for h in &subgroups {
        by_class.entry(finite.classify(h)).or_default().push(h);
    }

    let n = finite.order();
    let mut out = BTreeSet::new();
    for (class, members) in by_class {
        let is_summand = members.iter().any(|h| {
            let want = n / h.count();
            by_size
                .get(&want)
                .is_some_and(|ks| ks.iter().any(|k| h.meets_trivially(k)))
        });
        if is_summand {
            out.insert(class);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }

    /// Intersection is exactly `{0}`; both sides always contain 0.
    fn meets_trivially(&self, other: &Bits) -> bool {
        let shared: u32 = self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum();
        shared == 1
    }
}

/// `Z/d1 x ... x Z/dk` with elements encoded in mixed radix.
struct FiniteGroup {
    add: Vec<usize>,
    element_order: Vec<u64>,
}

impl FiniteGroup {
    fn new(moduli: Vec<u64>) -> Self {
        let n: usize = moduli.iter().product::<u64>() as usize;
        let digits: Vec<Vec<u64>> = (0..n).map(|x| Self::digits(&moduli, x)).collect();
        let mut add = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let mut code = 0usize;
                let mut place = 1usize;
                for ((a, b), &m) in digits[x].iter().zip(&digits[y]).zip(&moduli) {
                    code += ((a + b) % m) as usize * place;
                    place *= m as usize;
                }
                add[x * n + y] = code;
            }
        }
        let element_order = digits
            .iter()
            .map(|d| {
                d.iter().zip(&moduli).fold(1u64, |acc, (&x, &m)| {
                    let o = m / num_integer::gcd(x, m);
                    num_integer::lcm(acc, o)
                })
            })
            .collect();
        FiniteGroup { add, element_order }
    }

    fn digits(moduli: &[u64], mut x: usize) -> Vec<u64> {
        moduli
            .iter()
            .map(|&m| {
                let d = x as u64 % m;
                x /= m as usize;
                d
            })
            .collect()
    }

    fn order(&self) -> usize {
        self.element_order.len()
    }

    fn sum(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order() + y]
    }

    /// `<h, g>` for a subgroup `h`.
    fn adjoin(&self, h: &Bits, members: &[usize], g: usize) -> Bits {
        let mut out = h.clone();
        let mut multiple = g;
        while !h.contains(multiple) {
            for &x in members {
                out.insert(self.sum(x, multiple));
            }
            multiple = self.sum(multiple, g);
        }
        out
    }

    fn subgroups(&self) -> Vec<Bits> {
        let n = self.order();
        let mut zero = Bits::empty(n);
        zero.insert(0);
        let mut seen: HashSet<Bits> = HashSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        while let Some(h) = frontier.pop() {
            let members: Vec<usize> = h.iter().collect();
            for g in 0..n {
                if h.contains(g) {
                    continue;
                }
                let bigger = self.adjoin(&h, &members, g);
                if seen.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Isomorphism class of a subgroup from the counts
    /// `c_k = #{x in H : p^k x = 0}`, which satisfy
    /// `log_p(c_k) - log_p(c_(k-1)) = #{cyclic factors of order >= p^k}`.
    fn classify(&self, h: &Bits) -> FgAbelianGroup {
        let size = h.count() as u64;
        let orders: Vec<u64> = h.iter().map(|x| self.element_order[x]).collect();
        let mut torsion = Vec::new();
        for (p, _) in factorize(&BigInt::from(size)) {
            let p = p.to_u64().expect("small prime");
            let mut at_least = Vec::new();
            let mut prev_log = 0u32;
            let mut pk = 1u64;
            loop {
                pk *= p;
                let c = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
                let log = c.ilog(p);
                if log == prev_log {
                    break;
                }
                at_least.push(log - prev_log);
                prev_log = log;
            }
            for (k, &n_ge) in at_least.iter().enumerate() {
                let n_next = at_least.get(k + 1).copied().unwrap_or(0);
                let q = BigInt::from(p.pow(k as u32 + 1));
                torsion.extend(std::iter::repeat_n(q, (n_ge - n_next) as usize));
            }
        }
        FgAbelianGroup::from_parts(0, torsion)
    }
}

impl FgAbelianGroup {
    pub fn count_direct_summands(&self) -> BigUint {
        count_direct_summands(self)
    }

    pub fn enumerate_direct_summands(&self) -> Vec<FgAbelianGroup> {
        enumerate_direct_summands(self)
    }
}
