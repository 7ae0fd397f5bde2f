mod common;

use common::{sample_strategy, saturated_cover, seeded_corpus, unit_cover};
use groupoid_homology::abelian::{hermite_solve, FgAbGroup};
use groupoid_homology::groupoid::FiniteGroupoid;
use groupoid_homology::moore::{
    chain_level_homology, homology_result, moore_complex, CoefficientSpec, HomologyBasis,
};
use groupoid_homology::nerve::build_nerve;
use groupoid_homology::sequences::{
    connecting_class, mv_les, snake_les, subgroupoid_ses, uct_homology, uct_naturality_check, verify_exactness,
    ChainSES, MvCover,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Checks that the connecting class of a quotient cycle does not depend on
/// the chosen lift, by shifting the lift along `sub`.
fn lift_independent(ses: &ChainSES, n: usize, shift: &[i64]) -> Result<(), TestCaseError> {
    let basis = HomologyBasis::integral(ses.quot(), n).unwrap();
    let p = ses.project().component(n);
    let i = ses.inject().component(n);
    for j in 0..basis.group().num_generators() {
        let z = basis.representative(j);
        let b = hermite_solve(p, &z).unwrap().expect("projection is onto");
        let x: Vec<BigInt> = (0..i.cols()).map(|k| BigInt::from(shift[k % shift.len()])).collect();
        let shifted: Vec<BigInt> = b.iter().zip(i.mul_vec(&x)).map(|(u, v)| u + v).collect();
        prop_assert_eq!(connecting_class(ses, n, &b).unwrap(), connecting_class(ses, n, &shifted).unwrap());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn subgroupoid_sequences_are_exact(s in sample_strategy(12)) {
        let ses = subgroupoid_ses(&s.groupoid, &s.sub_arrows, 3).unwrap();
        let les = snake_les(&ses, 2).unwrap();
        let report = verify_exactness(&les);
        prop_assert!(report.is_empty(), "{:?} fails at {:?}", s.kinds, report.failures);
    }

    #[test]
    fn connecting_maps_ignore_the_lift(s in sample_strategy(12), shift in prop::collection::vec(-3i64..=3, 1..6)) {
        let ses = subgroupoid_ses(&s.groupoid, &s.sub_arrows, 3).unwrap();
        for n in 1..=2 {
            lift_independent(&ses, n, &shift)?;
        }
    }

    #[test]
    fn saturated_mayer_vietoris_is_exact(s in sample_strategy(12), mask in prop::collection::vec(0usize..3, 12)) {
        let (u1, u2) = saturated_cover(&s.groupoid, &mask);
        let cover = MvCover::new(&s.groupoid, &u1, &u2).unwrap();
        for support_local in [false, true] {
            let les = mv_les(&cover, 2, support_local).unwrap();
            prop_assert!(verify_exactness(&les).is_empty());
        }
    }

    #[test]
    fn support_local_mayer_vietoris_is_exact(s in sample_strategy(12), mask in prop::collection::vec(0usize..3, 12)) {
        let (u1, u2) = unit_cover(&s.groupoid, &mask);
        let cover = MvCover::new_unsaturated(&s.groupoid, &u1, &u2).unwrap();
        let les = mv_les(&cover, 2, true).unwrap();
        prop_assert!(verify_exactness(&les).is_empty());
    }
}

#[test]
fn unsaturated_cover_is_rejected_without_support_local() {
    let g = FiniteGroupoid::pair(2);
    assert!(MvCover::new(&g, &[0], &[3]).is_err());
    let cover = MvCover::new_unsaturated(&g, &[0], &[3]).unwrap();
    assert!(!cover.is_saturated());
    assert!(mv_les(&cover, 1, false).is_err());
    assert!(verify_exactness(&mv_les(&cover, 1, true).unwrap()).is_empty());
}

#[test]
fn uct_middle_terms_match_direct_homology() {
    let specs = [
        CoefficientSpec::Mod(2),
        CoefficientSpec::Mod(3),
        CoefficientSpec::Mod(4),
        CoefficientSpec::Group(FgAbGroup::new(1, &[2])),
    ];
    for s in seeded_corpus(11, 24, 12) {
        let c = moore_complex(&build_nerve(&s.groupoid, 3).unwrap());
        let h = homology_result(&c, &CoefficientSpec::Integers).unwrap();
        for a in &specs {
            for n in 0..=2 {
                let u = uct_homology(&h, a, n).unwrap();
                assert_eq!(u.middle, chain_level_homology(&c, &a.group(), n).unwrap(), "{:?} {a} n={n}", s.kinds);
                assert!(u.iota.is_injective() && u.kappa.is_surjective());
            }
        }
    }
}

#[test]
fn naturality_on_cyclic_four() {
    let ses = subgroupoid_ses(&FiniteGroupoid::cyclic_group(4), &[0, 2], 3).unwrap();
    for a in [
        CoefficientSpec::Mod(2),
        CoefficientSpec::Mod(3),
        CoefficientSpec::Mod(4),
        CoefficientSpec::Group(FgAbGroup::new(1, &[2])),
    ] {
        let report = uct_naturality_check(&ses, &a, 2).unwrap();
        assert!(report.is_ok(), "{a}: {report:?}");
        assert!(!report.squares.is_empty());
    }
}

#[test]
fn naturality_on_corpus_sequences() {
    for s in seeded_corpus(23, 10, 9) {
        let ses = subgroupoid_ses(&s.groupoid, &s.sub_arrows, 3).unwrap();
        let report = uct_naturality_check(&ses, &CoefficientSpec::Mod(2), 2).unwrap();
        assert!(report.is_ok(), "{:?}: {report:?}", s.kinds);
    }
}
