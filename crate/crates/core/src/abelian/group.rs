use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` in
/// invariant-factor form: every `di >= 2` and `di | d(i+1)`.
///
/// The form is canonical, so `==` is isomorphism. Ordering is by free rank,
/// then number of invariant factors, then the factors lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    /// `Z/n`. `n = 1` gives the trivial group and `n = 0` gives `Z`.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_parts(0, [n.into()])
    }

    /// Canonical form of `Z^free_rank + Z/t1 + Z/t2 + ...` for arbitrary
    /// orders `ti`. Orders of 1 are dropped, 0 contributes a free summand
    /// and negative orders are read by absolute value.
    pub fn from_parts<I>(free_rank: usize, torsion: I) -> Self
    where
        I: IntoIterator<Item = BigInt>,
    {
        let mut free_rank = free_rank;
        let mut orders = Vec::new();
        for t in torsion {
            let t = t.abs();
            if t.is_zero() {
                free_rank += 1;
            } else if !t.is_one() {
                orders.push(t);
            }
        }
        FgAbelianGroup {
            free_rank,
            invariant_factors: divisibility_chain(orders),
        }
    }

    /// Cokernel of `m`, read as a map from `Z^cols` to `Z^rows`.
    pub fn from_presentation(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        let diag = snf.diagonal_entries();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        FgAbelianGroup {
            free_rank: m.rows() - rank,
            invariant_factors: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
        }
    }

    /// Square diagonal relation matrix with `free_rank` trailing zero rows
    /// and columns, whose cokernel is this group.
    pub fn presentation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(
            self.invariant_factors
                .iter()
                .cloned()
                .chain(std::iter::repeat_n(BigInt::zero(), self.free_rank)),
        )
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// `Some(|A|)` for finite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// The torsion subgroup, as a group in its own right.
    pub fn torsion(&self) -> Self {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    /// `Z/m` with `m >= 2`, as `Some(m)`.
    pub fn as_finite_cyclic(&self) -> Option<&BigInt> {
        match (self.free_rank, self.invariant_factors.as_slice()) {
            (0, [m]) => Some(m),
            _ => None,
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self == other
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_parts(
            self.free_rank + other.free_rank,
            self.invariant_factors
                .iter()
                .chain(&other.invariant_factors)
                .cloned(),
        )
    }

    pub fn direct_sum_all<'a, I>(groups: I) -> Self
    where
        I: IntoIterator<Item = &'a FgAbelianGroup>,
    {
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for g in groups {
            free_rank += g.free_rank;
            torsion.extend(g.invariant_factors.iter().cloned());
        }
        Self::from_parts(free_rank, torsion)
    }

    /// `A (x) B` by bilinearity: `Z (x) X = X` and `Z/m (x) Z/n = Z/gcd(m,n)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut torsion = Vec::new();
        for _ in 0..other.free_rank {
            torsion.extend(self.invariant_factors.iter().cloned());
        }
        for _ in 0..self.free_rank {
            torsion.extend(other.invariant_factors.iter().cloned());
        }
        for a in &self.invariant_factors {
            for b in &other.invariant_factors {
                torsion.push(a.gcd(b));
            }
        }
        Self::from_parts(self.free_rank * other.free_rank, torsion)
    }

    /// `Tor(A, B)`: only torsion pairs contribute, `Tor(Z/m, Z/n) = Z/gcd(m,n)`.
    pub fn tor(&self, other: &Self) -> Self {
        let torsion = self
            .invariant_factors
            .iter()
            .flat_map(|a| other.invariant_factors.iter().map(move |b| a.gcd(b)));
        Self::from_parts(0, torsion)
    }

    pub fn primary_decomposition(&self) -> PrimaryDecomposition {
        let mut components = BTreeMap::new();
        for d in &self.invariant_factors {
            for (p, e) in factorize(d) {
                *components.entry((p, e)).or_insert(0) += 1;
            }
        }
        PrimaryDecomposition {
            free_rank: self.free_rank,
            components,
        }
    }
}

/// Rewrites a list of positive orders into an invariant-factor chain via
/// repeated `(a, b) -> (gcd, lcm)`, which preserves `Z/a + Z/b` up to
/// isomorphism. Ones are dropped afterwards.
fn divisibility_chain(mut xs: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let g = xs[i].gcd(&xs[j]);
            if g != xs[i] {
                let l = &xs[i] / &g * &xs[j];
                xs[i] = g;
                xs[j] = l;
            }
        }
    }
    xs.retain(|x| !x.is_one());
    xs
}

/// Trial-division factorization of `|n|` (n != 0) into `(prime, exponent)`
/// pairs in increasing prime order.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

impl Ord for FgAbelianGroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.free_rank
            .cmp(&other.free_rank)
            .then(self.invariant_factors.len().cmp(&other.invariant_factors.len()))
            .then_with(|| self.invariant_factors.cmp(&other.invariant_factors))
    }
}

impl PartialOrd for FgAbelianGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders in the group literal grammar: `0`, `Z`, `Z^3`, `Z/4`,
/// `Z^2 + Z/2 + Z/12`.
impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelianGroup({self})")
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let factors: Vec<BigNumber<'_>> = self.invariant_factors.iter().map(BigNumber).collect();
        let mut s = serializer.serialize_struct("FgAbelianGroup", 3)?;
        s.serialize_field("free_rank", &self.free_rank)?;
        s.serialize_field("invariant_factors", &factors)?;
        s.serialize_field("text", &self.to_string())?;
        s.end()
    }
}

/// Serializes as a JSON number when it fits in 64 bits, as a decimal
/// string otherwise.
struct BigNumber<'a>(pub &'a BigInt);

impl Serialize for BigNumber<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => serializer.serialize_i64(x),
            None => serializer.collect_str(self.0),
        }
    }
}

/// Primary (elementary-divisor) view of a group: free rank plus the
/// multiplicity of each cyclic summand `Z/p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PrimaryDecomposition {
    pub free_rank: usize,
    /// `(p, e) -> multiplicity of Z/p^e`
    pub components: BTreeMap<(BigInt, u32), usize>,
}

impl PrimaryDecomposition {
    /// Reassembles the canonical invariant-factor form.
    pub fn to_group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_parts(self.free_rank, self.prime_powers())
    }

    /// Every cyclic prime-power summand, repeated by multiplicity.
    pub fn prime_powers(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for ((p, e), &m) in &self.components {
            let q = num_traits::pow(p.clone(), *e as usize);
            out.extend(std::iter::repeat_n(q, m));
        }
        out
    }
}
