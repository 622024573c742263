mod common;

use std::collections::BTreeSet;

use davlab_core::index2::{
    build_group, centralizer_of_tau, enumerate_groups, reduction_subgroup, structural_invariants, Index2Params,
    PresentationType::*, TwoGroupKind,
};
use davlab_core::{Error, FiniteGroup};
use proptest::prelude::*;

/// Subgroup generated by all commutators, by repeated closure.
fn commutator_closure(g: &FiniteGroup) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([g.identity()]);
    for x in g.elements() {
        for y in g.elements() {
            let c = g.mul(g.mul(g.inverse(x), g.inverse(y)), g.mul(x, y));
            set.insert(c);
        }
    }
    loop {
        let grown: BTreeSet<usize> = set
            .iter()
            .flat_map(|&a| set.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.mul(a, b))
            .collect();
        if grown == set {
            return set;
        }
        set = grown;
    }
}

fn centralizer_filter(g: &FiniteGroup, of: &[usize]) -> BTreeSet<usize> {
    g.elements()
        .filter(|&x| of.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect()
}

fn as_set(v: Vec<usize>) -> BTreeSet<usize> {
    v.into_iter().collect()
}

#[test]
fn every_catalog_table_is_a_group() {
    for p in enumerate_groups(32) {
        let g = build_group(p).unwrap();
        let grp = g.group();
        let k = grp.order();
        assert_eq!(k, p.order());
        for x in 0..k {
            assert_eq!(grp.mul(0, x), x);
            assert_eq!(grp.mul(x, 0), x);
            assert_eq!(grp.mul(x, grp.inverse(x)), 0);
            for y in 0..k {
                for z in 0..k {
                    assert_eq!(grp.mul(grp.mul(x, y), z), grp.mul(x, grp.mul(y, z)), "{p}");
                }
            }
        }
        assert_eq!(grp.element_order(g.alpha_pow(1)), p.n(), "<α> has index 2 in {p}");
    }
}

#[test]
fn formula_subgroups_match_direct_computation() {
    for p in enumerate_groups(32) {
        let g = build_group(p).unwrap();
        let grp = g.group();
        let inv = structural_invariants(&g).unwrap();
        assert_eq!(as_set(inv.commutator.elements()), commutator_closure(grp), "{p}");
        let all: Vec<usize> = grp.elements().collect();
        assert_eq!(as_set(inv.center.elements()), centralizer_filter(grp, &all), "{p}");
        match centralizer_of_tau(&g) {
            Ok(c) => assert_eq!(as_set(c.elements()), centralizer_filter(grp, &[g.tau()]), "{p}"),
            Err(Error::Precondition(_)) => {
                assert!(matches!(
                    g.kind(),
                    TwoGroupKind::Cyclic | TwoGroupKind::GeneralizedQuaternion
                ))
            }
            Err(e) => panic!("{p}: {e}"),
        }
    }
}

#[test]
fn n_plus_minus_follow_the_two_adic_table() {
    for p in enumerate_groups(32) {
        let (s, two) = (p.s, p.two_power());
        let rho = p.rho();
        let (nm, np) = (p.n_minus(), p.n_plus());
        assert_eq!(nm * np, p.n());
        assert_eq!(p.m_plus() * p.m_minus(), p.m);
        assert_eq!(num_gcd(p.m_plus(), p.m_minus()), 1);
        assert_eq!((p.r + 1) % np, 0, "{p}");
        if s == 0 {
            assert_eq!(nm % 2, 1);
        } else {
            assert_eq!(nm % 2, 0, "{p}");
        }
        if s <= 1 || rho == 1 {
            assert_eq!((nm, np), (two * p.m_minus(), p.m_plus()), "{p}");
        } else if rho == two - 1 || rho == two / 2 - 1 {
            assert_eq!((nm, np), (2 * p.m_minus(), two / 2 * p.m_plus()), "{p}");
        } else {
            assert_eq!(rho, two / 2 + 1);
            assert_eq!((nm, np), (two / 2 * p.m_minus(), 2 * p.m_plus()), "{p}");
        }
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn same_order_entries_are_distinguished() {
    let catalog = enumerate_groups(32);
    for (i, a) in catalog.iter().enumerate() {
        for b in &catalog[i + 1..] {
            if a.order() != b.order() {
                continue;
            }
            let key = |p: &Index2Params| {
                let g = build_group(*p).unwrap();
                let grp = g.group();
                (
                    grp.order_histogram(),
                    grp.commutator_subgroup().order(),
                    grp.center().order(),
                )
            };
            assert_ne!(key(a), key(b), "{a} and {b} look isomorphic");
        }
    }
}

#[test]
fn catalog_contents() {
    let names = |order: usize| -> Vec<String> {
        enumerate_groups(order)
            .into_iter()
            .filter(|p| p.order() == order)
            .map(|p| p.display_name())
            .collect()
    };
    assert_eq!(names(8), ["C8", "C2xC4", "D8", "Q8"]);
    assert!(names(16).contains(&"SD16".to_string()) && names(16).contains(&"M16".to_string()));
    let upto6: Vec<(u32, usize, usize)> = enumerate_groups(6).iter().map(|p| (p.s, p.m, p.r)).collect();
    for want in [(0, 1, 1), (1, 1, 1), (0, 3, 1), (0, 3, 2)] {
        assert!(upto6.contains(&want));
    }
    assert_eq!(enumerate_groups(12).len(), 15);
}

#[test]
fn structure_examples() {
    let q8 = build_group(Index2Params::new(2, 1, 3, B)).unwrap();
    let grp = q8.group();
    assert_eq!(grp.mul(q8.tau(), q8.tau()), q8.alpha_pow(2));
    assert_eq!(
        as_set(grp.commutator_subgroup().elements()),
        BTreeSet::from([0, q8.alpha_pow(2)])
    );
    assert_eq!(as_set(grp.center().elements()), BTreeSet::from([0, q8.alpha_pow(2)]));
    assert!(matches!(centralizer_of_tau(&q8), Err(Error::Precondition(_))));

    let d8 = build_group(Index2Params::new(2, 1, 3, A)).unwrap();
    let c = centralizer_of_tau(&d8).unwrap();
    let want = BTreeSet::from([0, d8.alpha_pow(2), d8.tau(), d8.tau_alpha(2)]);
    assert_eq!(as_set(c.elements()), want);

    let q12 = build_group(Index2Params::new(1, 3, 5, B)).unwrap();
    let inv = structural_invariants(&q12).unwrap();
    assert_eq!((inv.commutator_order, inv.center_order), (3, 2));
    let quotient = q12.group().quotient(&q12.group().commutator_subgroup()).unwrap();
    assert_eq!(quotient.group.order(), 4);
    assert!(quotient.group.is_abelian());

    let sd16 = build_group(Index2Params::new(3, 1, 3, A)).unwrap();
    assert_eq!((sd16.params().n_minus(), sd16.params().n_plus()), (2, 4));
    let inv = structural_invariants(&sd16).unwrap();
    assert_eq!((inv.commutator_order, inv.center_order), (4, 2));

    let d12 = build_group(Index2Params::new(1, 3, 5, A)).unwrap();
    assert_eq!(centralizer_of_tau(&d12).unwrap().order(), 4);
    assert_eq!(reduction_subgroup(&d12, 3).unwrap().subgroup.order(), 12);
    let d30 = build_group(Index2Params::new(0, 15, 14, A)).unwrap();
    let h = reduction_subgroup(&d30, 5).unwrap();
    assert_eq!((h.subgroup.order(), h.commutator_order), (10, 5));
    assert!(reduction_subgroup(&q12, 2).is_err());
}

#[test]
fn group_core_examples() {
    let c6 = FiniteGroup::cyclic(6);
    let a = c6.set_of([0, 2, 4]);
    assert_eq!(c6.left_stabilizer(&a).unwrap().elements(), vec![0, 2, 4]);
    assert!(c6.left_stabilizer(&c6.set_of([3])).unwrap().is_trivial());
    assert_eq!(c6.left_stabilizer(&c6.set_of(0..6)).unwrap().order(), 6);
    let h = c6.generated_subgroup(&c6.set_of([3])).unwrap();
    assert_eq!(c6.quotient(&h).unwrap().group.order(), 3);
    let trivial = c6.trivial_subgroup();
    assert_eq!(c6.quotient(&trivial).unwrap().group.order(), 6);
    assert_eq!(c6.center().order(), 6);
    assert!(c6.commutator_subgroup().is_trivial());

    let q12 = build_group(Index2Params::new(1, 3, 5, B)).unwrap();
    let json = q12.group().to_cayley_json();
    let back = FiniteGroup::from_cayley_json(&json).unwrap();
    assert_eq!(back.to_cayley_json(), json);
    let text = serde_json::to_string(&json).unwrap();
    let parsed: davlab_core::group::CayleyJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, json);
}

#[test]
fn bad_tables_are_rejected() {
    // not associative: a Latin square that is not a group table
    let table = vec![
        0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0,
    ];
    assert!(FiniteGroup::from_table(5, table, None).is_err());
    assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1], None).is_err());
}

fn group_and_subset() -> impl Strategy<Value = (FiniteGroup, Vec<usize>)> {
    let groups: Vec<FiniteGroup> = common::catalog(24).into_iter().map(|(_, g)| g).collect();
    (0..groups.len()).prop_flat_map(move |i| {
        let g = groups[i].clone();
        let k = g.order();
        (Just(g), prop::collection::vec(0..k, 1..=k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn commutator_is_normal_with_abelian_quotient((g, _) in group_and_subset()) {
        let c = g.commutator_subgroup();
        prop_assert!(g.is_normal(&c));
        prop_assert!(g.quotient(&c).unwrap().group.is_abelian());
        let all = g.set_of(g.elements());
        prop_assert_eq!(g.center(), g.centralizer(&all).unwrap());
    }

    #[test]
    fn stabilizer_cosets_tile_the_set((g, subset) in group_and_subset()) {
        let a = g.set_of(subset);
        let h = g.left_stabilizer(&a).unwrap();
        prop_assert_eq!(a.len() % h.order(), 0);
        prop_assert_eq!(g.product_of_sets(h.members(), &a), a.clone());
        for x in h.elements() {
            for y in h.elements() {
                prop_assert!(h.contains(g.mul(x, g.inverse(y))));
            }
        }
    }
}
