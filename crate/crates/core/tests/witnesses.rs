mod common;

use common::{subset_product_table, table_is_atom};
use davlab_core::index2::{build_group, enumerate_groups, Index2Params, PresentationType::*};
use davlab_core::sequence::is_atom;
use davlab_core::witness::{check_all_upto, lower_bound_sequence, nonatom_certificate, random_long_product_one};
use davlab_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_nonabelian_witness_checks_out() {
    let records = check_all_upto(32).unwrap();
    let nonabelian = enumerate_groups(32).iter().filter(|p| !p.is_abelian()).count();
    assert_eq!(records.len(), nonabelian);
    for rec in &records {
        assert!(rec.checks.all(), "{}: {:?}", rec.name, rec.checks);
        assert_eq!(rec.length, rec.params.n() + rec.params.n_plus());
    }
}

#[test]
fn short_witnesses_are_atoms_by_subset_oracle() {
    for p in enumerate_groups(32).into_iter().filter(|p| !p.is_abelian()) {
        let g = build_group(p).unwrap();
        let u = lower_bound_sequence(&g).unwrap();
        if u.len() <= 12 && g.group().order() <= 64 {
            assert!(
                table_is_atom(g.group(), &subset_product_table(g.group(), &u.elements())),
                "{p}"
            );
        }
    }
}

#[test]
fn witness_lengths() {
    for (p, len) in [
        (Index2Params::new(0, 3, 2, A), 6),
        (Index2Params::new(2, 1, 3, A), 6),
        (Index2Params::new(1, 3, 5, B), 9),
    ] {
        let g = build_group(p).unwrap();
        assert_eq!(lower_bound_sequence(&g).unwrap().len(), len);
    }
    let s3 = build_group(Index2Params::new(0, 3, 2, A)).unwrap();
    let mut expected = davlab_core::Sequence::repeated(6, s3.tau_alpha(1), 2);
    expected.push_n(s3.alpha_pow(1), 4);
    assert_eq!(lower_bound_sequence(&s3).unwrap(), expected);
    let c6 = build_group(Index2Params::new(1, 3, 1, B)).unwrap();
    assert!(matches!(lower_bound_sequence(&c6), Err(Error::Precondition(_))));
}

#[test]
fn long_product_one_sequences_split() {
    let mut trials = 0;
    for (p, seed) in [
        (Index2Params::new(1, 3, 5, B), 1u64),
        (Index2Params::new(0, 3, 2, A), 2),
        (Index2Params::new(1, 3, 5, A), 3),
    ] {
        let g = build_group(p).unwrap();
        let grp = g.group();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..400 {
            let s = random_long_product_one(&g, t % 3, &mut rng);
            assert!(!is_atom(grp, &s).unwrap());
            let (a, b) = nonatom_certificate(&g, &s).unwrap();
            assert!(!a.is_empty() && !b.is_empty());
            assert_eq!(a.concat(&b).unwrap(), s);
            for part in [&a, &b] {
                let table = subset_product_table(grp, &part.elements());
                assert!(table[table.len() - 1] & 1 << grp.identity() != 0);
            }
            trials += 1;
        }
    }
    assert!(trials >= 1000);
}

#[test]
fn certificate_preconditions() {
    let q12 = build_group(Index2Params::new(1, 3, 5, B)).unwrap();
    let short = lower_bound_sequence(&q12).unwrap();
    assert!(matches!(nonatom_certificate(&q12, &short), Err(Error::Precondition(_))));
    let central = davlab_core::Sequence::from_pairs(12, &[(0, 6), (3, 4)]);
    assert!(matches!(
        nonatom_certificate(&q12, &central),
        Err(Error::Precondition(_))
    ));
    let d8 = build_group(Index2Params::new(2, 1, 3, A)).unwrap();
    let s = davlab_core::Sequence::repeated(8, d8.alpha_pow(1), 8);
    let (a, b) = nonatom_certificate(&d8, &s).unwrap();
    assert_eq!((a.len(), b.len()), (4, 4));
}
