mod common;

use common::{brute_is_atom, brute_product_one_free, catalog, permutation_products};
use davlab_core::sequence::{
    g_prime_complement_check, is_atom, is_product_one, is_product_one_free, n_products, n_sums, product_set,
    subsequence_products,
};
use davlab_core::{FiniteGroup, OrderedSequence, Sequence};
use proptest::prelude::*;

fn groups_upto(max: usize) -> Vec<FiniteGroup> {
    catalog(max).into_iter().map(|(_, g)| g).collect()
}

/// A group from the catalog and a term list over it.
fn group_and_terms(max_order: usize, max_len: usize) -> impl Strategy<Value = (FiniteGroup, Vec<usize>)> {
    let groups = groups_upto(max_order);
    (0..groups.len()).prop_flat_map(move |i| {
        let g = groups[i].clone();
        let k = g.order();
        (Just(g), prop::collection::vec(0..k, 0..=max_len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn products_lie_in_one_commutator_coset((g, terms) in group_and_terms(16, 8)) {
        let s = Sequence::from_elements(g.order(), terms);
        let pi = product_set(&g, &s).unwrap();
        let commutator = g.commutator_subgroup();
        let first = pi.first().unwrap();
        for x in pi.iter() {
            prop_assert!(commutator.contains(g.mul(g.inverse(first), x)));
        }
    }

    #[test]
    fn product_set_matches_permutations((g, terms) in group_and_terms(12, 6)) {
        let s = Sequence::from_elements(g.order(), terms.clone());
        let pi: Vec<usize> = product_set(&g, &s).unwrap().to_vec();
        let oracle: Vec<usize> = permutation_products(&g, &terms).into_iter().collect();
        prop_assert_eq!(pi, oracle);
    }

    #[test]
    fn dropping_the_identity_keeps_products((g, terms) in group_and_terms(16, 7)) {
        let mut s = Sequence::from_elements(g.order(), terms);
        s.push(g.identity());
        prop_assume!(s.len() >= 2);
        let before = product_set(&g, &s).unwrap();
        s.remove_one(g.identity());
        prop_assert_eq!(before, product_set(&g, &s).unwrap());
    }

    #[test]
    fn sums_match_products_when_abelian(k in 1usize..=13, terms in prop::collection::vec(0usize..64, 1..=9), pick in 0usize..9) {
        let g = FiniteGroup::cyclic(k);
        let s = Sequence::from_elements(k, terms.iter().map(|x| x % k));
        let n = 1 + pick % s.len();
        prop_assert_eq!(n_sums(&g, &s, n).unwrap(), n_products(&g, &s, n).unwrap());
    }

    #[test]
    fn rotation_conjugates_the_product((g, terms) in group_and_terms(16, 8), j in 1usize..=8) {
        prop_assume!(!terms.is_empty());
        let j = 1 + (j - 1) % terms.len();
        let s = OrderedSequence::new(g.order(), terms.clone());
        let shifted = s.cyclic_shift(j).unwrap();
        let head = OrderedSequence::new(g.order(), terms[..j - 1].to_vec()).product(&g);
        let p = s.product(&g);
        prop_assert_eq!(shifted.product(&g), g.mul(g.mul(g.inverse(head), p), head));
        if p == g.identity() {
            prop_assert_eq!(shifted.product(&g), g.identity());
        }
    }

    #[test]
    fn atom_orderings_have_no_proper_product_one_interval((g, mut terms) in group_and_terms(12, 6)) {
        let p = OrderedSequence::new(g.order(), terms.clone()).product(&g);
        terms.push(g.inverse(p));
        let u = Sequence::from_elements(g.order(), terms.clone());
        prop_assume!(is_atom(&g, &u).unwrap());
        for len in 1..terms.len() {
            for start in 0..=terms.len() - len {
                let window = OrderedSequence::new(g.order(), terms[start..start + len].to_vec());
                prop_assert_eq!(window.consecutive_product_one_scan(&g), None);
            }
        }
    }

    #[test]
    fn commutator_parts_leave_commutator_complements((g, mut terms) in group_and_terms(12, 7), mask in any::<u32>()) {
        let p = OrderedSequence::new(g.order(), terms.clone()).product(&g);
        terms.push(g.inverse(p));
        let s = Sequence::from_elements(g.order(), terms.clone());
        let t = Sequence::from_elements(g.order(), common::pick(&terms, mask & ((1 << terms.len()) - 1)));
        let commutator = g.commutator_subgroup();
        if product_set(&g, &t).unwrap().is_subset(commutator.members()) {
            prop_assert!(g_prime_complement_check(&g, &s, &t).unwrap());
        }
    }

    #[test]
    fn atom_and_free_tests_match_oracles((g, terms) in group_and_terms(8, 5)) {
        let s = Sequence::from_elements(g.order(), terms.clone());
        prop_assert_eq!(is_atom(&g, &s).unwrap(), brute_is_atom(&g, &terms));
        prop_assert_eq!(is_product_one_free(&g, &s).unwrap(), brute_product_one_free(&g, &terms));
    }
}

#[test]
fn s3_product_examples() {
    let g = groups_upto(6).into_iter().find(|g| !g.is_abelian()).unwrap();
    let t = g.find_label("t").unwrap();
    let a = g.find_label("a").unwrap();
    let s = Sequence::from_elements(6, [t, a]);
    let pi = product_set(&g, &s).unwrap();
    let expected = [g.find_label("t*a").unwrap(), g.find_label("t*a^2").unwrap()];
    assert_eq!(pi.to_vec(), {
        let mut e = expected.to_vec();
        e.sort();
        e
    });
    let mut big_pi = subsequence_products(&g, &s).unwrap().to_vec();
    big_pi.sort();
    let mut want = vec![t, a, expected[0], expected[1]];
    want.sort();
    assert_eq!(big_pi, want);
}

#[test]
fn trivial_and_cyclic_conventions() {
    let c3 = FiniteGroup::cyclic(3);
    let empty = Sequence::new(3);
    assert!(is_product_one(&c3, &empty).unwrap());
    assert!(is_product_one_free(&c3, &empty).unwrap());
    assert!(!is_atom(&c3, &empty).unwrap());
    assert!(is_atom(&c3, &Sequence::repeated(3, 1, 3)).unwrap());
    let mut with_one = Sequence::repeated(3, 1, 3);
    with_one.push(0);
    assert!(!is_atom(&c3, &with_one).unwrap());
    for k in 2..=12 {
        let g = FiniteGroup::cyclic(k);
        assert!(is_product_one_free(&g, &Sequence::repeated(k, 1, (k - 1) as u32)).unwrap());
        assert!(is_product_one(&g, &Sequence::repeated(k, 1, k as u32)).unwrap());
    }
    let z5 = FiniteGroup::cyclic(5);
    let s = Sequence::from_elements(5, [1, 1, 2, 3]);
    assert_eq!(n_sums(&z5, &s, 2).unwrap().to_vec(), vec![0, 2, 3, 4]);
    assert_eq!(n_sums(&z5, &s, 4).unwrap().to_vec(), vec![2]);
}

#[test]
fn long_orderings_always_contain_a_product_one_interval() {
    for g in groups_upto(12) {
        let k = g.order();
        let terms: Vec<usize> = (0..k).map(|i| (i * 7 + 3) % k).collect();
        let s = OrderedSequence::new(k, terms.clone());
        let (j, l) = s.consecutive_product_one_scan(&g).unwrap();
        let window = OrderedSequence::new(k, terms[j - 1..l].to_vec());
        assert_eq!(window.product(&g), g.identity());
    }
}
