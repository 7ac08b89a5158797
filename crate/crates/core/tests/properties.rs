use std::collections::BTreeSet;

use borsuk::abelian::{
    brute_force_summands, count_direct_summands, enumerate_direct_summands, groups_of_order,
    smith_normal_form, FgAbelianGroup, IntMatrix, DEFAULT_BRUTE_FORCE_LIMIT,
};
use borsuk::capacity::{capacity, distinguishable_subproducts, enumerate_dominated, ExtendedCount};
use borsuk::cli::parse_space;
use borsuk::spaces::SpaceExpr;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn group_from(free: usize, torsion: Vec<i64>) -> FgAbelianGroup {
    FgAbelianGroup::from_parts(free, torsion.into_iter().map(BigInt::from))
}

fn arb_group() -> impl Strategy<Value = FgAbelianGroup> {
    (0usize..=2, prop::collection::vec(2i64..=12, 0..=3)).prop_map(|(f, t)| group_from(f, t))
}

fn arb_finite_group() -> impl Strategy<Value = FgAbelianGroup> {
    let all: Vec<FgAbelianGroup> = (1..=64).flat_map(groups_of_order).collect();
    prop::sample::select(all)
}

fn arb_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(-50i64..=50, r * c).prop_map(move |v| {
            IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect())
        })
    })
}

/// Random unimodular matrix as a product of elementary operations.
fn arb_unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n.max(1), 0..n.max(1), -3i64..=3, any::<bool>()), 0..12).prop_map(
        move |ops| {
            let mut m = IntMatrix::identity(n);
            for (i, j, k, swap) in ops {
                if n == 0 {
                    break;
                }
                if swap {
                    m.swap_rows(i, j);
                } else if i != j {
                    m.add_row_multiple(i, j, &BigInt::from(k));
                }
            }
            m
        },
    )
}

fn leaf_space() -> impl Strategy<Value = SpaceExpr> {
    prop_oneof![
        Just(SpaceExpr::Point),
        (1u32..=6).prop_map(SpaceExpr::Sphere),
        (arb_group(), 2u32..=5).prop_map(|(group, degree)| SpaceExpr::Moore { degree, group }),
        (2u32..=3).prop_map(SpaceExpr::ComplexProjective),
        (1i64..=6).prop_map(|m| SpaceExpr::EilenbergMacLane {
            degree: 1,
            group: FgAbelianGroup::cyclic(m)
        }),
        Just(SpaceExpr::EilenbergMacLane { degree: 2, group: FgAbelianGroup::integers() }),
    ]
}

/// Spaces with computable homology.
fn arb_space() -> impl Strategy<Value = SpaceExpr> {
    leaf_space().prop_recursive(2, 12, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..=4).prop_map(SpaceExpr::Wedge),
            prop::collection::vec(inner, 2..=3).prop_map(SpaceExpr::Product),
        ]
    })
}

/// Spaces whose capacity is exact.
fn arb_classified_space() -> impl Strategy<Value = SpaceExpr> {
    let sphere_wedge = prop::collection::vec(1u32..=5, 0..=6)
        .prop_map(|dims| SpaceExpr::Wedge(dims.into_iter().map(SpaceExpr::Sphere).collect()));
    let moore_wedge = prop::collection::vec((arb_group(), 2u32..=5), 1..=3).prop_map(|parts| {
        SpaceExpr::Wedge(
            parts
                .into_iter()
                .map(|(group, degree)| SpaceExpr::Moore { degree, group })
                .collect(),
        )
    });
    let em = (arb_group(), 1u32..=4)
        .prop_map(|(group, degree)| SpaceExpr::EilenbergMacLane { degree, group });
    prop_oneof![
        sphere_wedge,
        moore_wedge,
        em,
        Just(SpaceExpr::ComplexProjective(2)),
        Just(SpaceExpr::Point),
    ]
    .prop_map(|s| match s {
        SpaceExpr::Wedge(cs) if cs.is_empty() => SpaceExpr::Point,
        s => s,
    })
}

fn is_divisibility_chain(d: &[BigInt]) -> bool {
    let nonzero: Vec<_> = d.iter().take_while(|x| !x.is_zero()).collect();
    d.iter().all(|x| !x.is_negative())
        && d[nonzero.len()..].iter().all(Zero::is_zero)
        && nonzero.windows(2).all(|w| w[1].is_multiple_of(w[0]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_is_exact(m in arb_matrix(8)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.left * &m) * &s.right, s.diagonal.clone());
        prop_assert!(s.left.is_unimodular());
        prop_assert!(s.right.is_unimodular());
        prop_assert!(s.diagonal.is_diagonal());
        prop_assert!(is_divisibility_chain(&s.diagonal_entries()));
    }

    #[test]
    fn presentation_round_trip(free in 0usize..=2, finite in arb_finite_group()) {
        let a = finite.direct_sum(&FgAbelianGroup::free(free));
        prop_assert_eq!(FgAbelianGroup::from_presentation(&a.presentation_matrix()), a);
    }

    #[test]
    fn presentation_is_invariant_under_unimodular_change_of_basis(
        (a, u, v) in arb_group().prop_flat_map(|a| {
            let n = a.presentation_matrix().rows();
            (Just(a), arb_unimodular(n), arb_unimodular(n))
        })
    ) {
        let scrambled = &(&u * &a.presentation_matrix()) * &v;
        prop_assert_eq!(FgAbelianGroup::from_presentation(&scrambled), a);
    }

    #[test]
    fn isomorphism_is_an_equivalence(a in arb_group(), b in arb_group(), c in arb_group()) {
        prop_assert!(a.is_isomorphic(&a));
        prop_assert_eq!(a.is_isomorphic(&b), b.is_isomorphic(&a));
        if a.is_isomorphic(&b) && b.is_isomorphic(&c) {
            prop_assert!(a.is_isomorphic(&c));
        }
    }

    #[test]
    fn direct_sum_ignores_argument_order(
        parts in prop::collection::vec(arb_group(), 1..=4),
        shuffle in any::<prop::sample::Index>(),
    ) {
        let forward = parts.iter().fold(FgAbelianGroup::trivial(), |acc, g| acc.direct_sum(g));
        let mut rotated = parts.clone();
        let k = shuffle.index(parts.len());
        rotated.rotate_left(k);
        rotated.reverse();
        let backward = rotated.iter().fold(FgAbelianGroup::trivial(), |acc, g| acc.direct_sum(g));
        prop_assert!(forward.is_isomorphic(&backward));
    }

    #[test]
    fn summand_count_is_multiplicative_for_coprime_orders(a in arb_finite_group(), b in arb_finite_group()) {
        let (oa, ob) = (a.order().unwrap(), b.order().unwrap());
        prop_assume!(oa.gcd(&ob) == BigInt::from(1));
        prop_assert_eq!(
            count_direct_summands(&a.direct_sum(&b)),
            count_direct_summands(&a) * count_direct_summands(&b)
        );
    }

    #[test]
    fn tensor_and_tor_commute(a in arb_group(), b in arb_group()) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tor(&b), b.tor(&a));
        prop_assert!(FgAbelianGroup::free(a.free_rank()).tor(&b).is_trivial());
    }

    #[test]
    fn enumeration_length_matches_count(a in arb_group()) {
        let all = enumerate_direct_summands(&a);
        prop_assert_eq!(BigUint::from(all.len()), count_direct_summands(&a));
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(all.first(), Some(&FgAbelianGroup::trivial()));
        prop_assert_eq!(all.last(), Some(&a));
    }

    #[test]
    fn canonicalize_is_idempotent(x in arb_space()) {
        let c = x.canonicalize();
        prop_assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn homology_survives_canonicalization(x in arb_space()) {
        let c = x.canonicalize();
        let (hx, hc) = (x.homology_profile(12).unwrap(), c.homology_profile(12).unwrap());
        prop_assert_eq!(hx.groups(), hc.groups());
    }

    #[test]
    fn wedge_homology_is_additive(children in prop::collection::vec(arb_space(), 1..=5), n in 1u32..=10) {
        let w = SpaceExpr::Wedge(children.clone());
        let parts: Vec<FgAbelianGroup> = children.iter().map(|c| c.homology(n).unwrap()).collect();
        prop_assert_eq!(w.homology(n).unwrap(), FgAbelianGroup::direct_sum_all(&parts));
    }

    #[test]
    fn kunneth_is_symmetric(x in arb_space(), y in arb_space(), n in 0u32..=8) {
        let xy = SpaceExpr::Product(vec![x.clone(), y.clone()]);
        let yx = SpaceExpr::Product(vec![y, x]);
        prop_assert_eq!(xy.homology(n).unwrap(), yx.homology(n).unwrap());
    }

    #[test]
    fn sphere_homology(k in 1u32..=20, n in 0u32..=22) {
        let h = SpaceExpr::Sphere(k).homology(n).unwrap();
        let want = if n == 0 || n == k { FgAbelianGroup::integers() } else { FgAbelianGroup::trivial() };
        prop_assert_eq!(h, want);
    }

    #[test]
    fn enumeration_has_capacity_many_distinct_entries(x in arb_classified_space()) {
        let c = capacity(&x);
        let ExtendedCount::Finite(value) = &c else {
            return Err(TestCaseError::fail(format!("{x} has capacity {c}")));
        };
        prop_assume!(*value <= BigUint::from(200u32));
        let all = enumerate_dominated(&x).unwrap();
        prop_assert_eq!(&BigUint::from(all.len()), value);
        prop_assert!(all.contains(&SpaceExpr::Point));
        prop_assert!(all.contains(&x.canonicalize()));
        let distinct: BTreeSet<_> = all.iter().collect();
        prop_assert_eq!(distinct.len(), all.len());
        prop_assert!(all.iter().all(SpaceExpr::is_canonical));
    }

    #[test]
    fn dominated_homology_is_a_summand(x in arb_classified_space()) {
        prop_assume!(capacity(&x).exact().is_some_and(|v| *v <= BigUint::from(200u32)));
        // K(A, n) beyond the supported table has no homology to compare
        prop_assume!(x.homology_profile(0).is_ok());
        let dim = x.dimension().unwrap_or(8).min(8);
        for d in enumerate_dominated(&x).unwrap() {
            for n in 0..=dim {
                let summands = enumerate_direct_summands(&x.homology(n).unwrap());
                prop_assert!(summands.contains(&d.homology(n).unwrap()), "{} in degree {}", d, n);
            }
        }
    }

    #[test]
    fn capacity_multiplies_over_disjoint_dimension_blocks(
        low in prop::collection::vec(1u32..=3, 1..=4),
        high in prop::collection::vec(4u32..=7, 1..=4),
    ) {
        let w1 = SpaceExpr::Wedge(low.into_iter().map(SpaceExpr::Sphere).collect());
        let w2 = SpaceExpr::Wedge(high.into_iter().map(SpaceExpr::Sphere).collect());
        let both = SpaceExpr::Wedge(vec![w1.clone(), w2.clone()]);
        let v = |s: &SpaceExpr| capacity(s).exact().cloned().unwrap();
        prop_assert_eq!(v(&both), v(&w1) * v(&w2));
    }

    #[test]
    fn product_lower_bound_is_at_most_two_to_the_factors(factors in prop::collection::vec(leaf_space(), 2..=4)) {
        let p = SpaceExpr::Product(factors);
        let canon = p.canonicalize();
        if let ExtendedCount::LowerBound(v) = capacity(&p) {
            let SpaceExpr::Product(fs) = &canon else { unreachable!() };
            prop_assert!(v <= BigUint::from(1u32 << fs.len()));
            prop_assert!(v >= BigUint::from(1u32));
            prop_assert_eq!(distinguishable_subproducts(fs, 10).unwrap().len(), usize::try_from(&v).unwrap());
        }
    }

    #[test]
    fn capacity_is_invariant_under_canonicalization(x in arb_space()) {
        prop_assert_eq!(capacity(&x), capacity(&x.canonicalize()));
    }

    #[test]
    fn canonical_render_round_trips(x in arb_space()) {
        let c = x.canonicalize();
        prop_assert_eq!(parse_space(&c.to_string()).unwrap(), c);
    }
}

#[test]
fn summand_formula_agrees_with_brute_force_up_to_order_64() {
    for n in 1..=64 {
        for a in groups_of_order(n) {
            let brute = brute_force_summands(&a, DEFAULT_BRUTE_FORCE_LIMIT).unwrap();
            assert_eq!(enumerate_direct_summands(&a), brute, "{a}");
            assert_eq!(count_direct_summands(&a), BigUint::from(brute.len()));
        }
    }
}

#[test]
fn z2_squared_plus_z6_count() {
    let a = group_from(2, vec![6]);
    assert_eq!(count_direct_summands(&a), BigUint::from(12u32));
    let torsion = a.torsion();
    let brute = brute_force_summands(&torsion, DEFAULT_BRUTE_FORCE_LIMIT).unwrap();
    assert_eq!(brute.len(), 4);
}
