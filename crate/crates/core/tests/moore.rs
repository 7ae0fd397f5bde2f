mod common;

use common::{check_simplicial_identities_exhaustively, sample_strategy, seeded_corpus, Sample};
use groupoid_homology::abelian::{direct_sum, FgAbGroup};
use groupoid_homology::groupoid::{orbits, validate_groupoid, FiniteGroupoid};
use groupoid_homology::moore::{
    chain_level_homology, homology, homology_mod_prime, homology_uct_route, moore_complex, ChainComplex,
};
use groupoid_homology::nerve::build_nerve;
use proptest::prelude::*;

fn complex(g: &FiniteGroupoid, n_max: usize) -> ChainComplex {
    moore_complex(&build_nerve(g, n_max).unwrap())
}

fn brute_force_level_size(g: &FiniteGroupoid, n: usize) -> usize {
    if n == 0 {
        return g.unit_count();
    }
    let mut tuples: Vec<Vec<usize>> = (0..g.arrow_count()).map(|a| vec![a]).collect();
    for _ in 1..n {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                let last = *t.last().unwrap();
                (0..g.arrow_count())
                    .filter(move |&b| g.source(last) == g.range(b))
                    .map(move |b| {
                        let mut u = t.clone();
                        u.push(b);
                        u
                    })
            })
            .collect();
    }
    tuples.len()
}

/// First homology of each piece: the abelianised isotropy of every orbit.
fn expected_h1(kind: usize) -> FgAbGroup {
    match kind {
        0 | 5 | 6 | 7 | 8 | 10 => FgAbGroup::trivial(),
        1 | 9 => FgAbGroup::cyclic(2),
        2 => FgAbGroup::cyclic(3),
        3 => FgAbGroup::cyclic(4),
        4 => FgAbGroup::new(0, &[2, 2]),
        _ => unreachable!(),
    }
}

fn expected_low_homology(s: &Sample) -> (FgAbGroup, FgAbGroup) {
    let h0 = FgAbGroup::free(orbits(&s.groupoid).len());
    let h1 = direct_sum(&s.kinds.iter().map(|&k| expected_h1(k)).collect::<Vec<_>>());
    (h0, h1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn corpus_groupoids_are_valid(s in sample_strategy(12)) {
        prop_assert!(validate_groupoid(&s.groupoid).is_empty());
    }

    #[test]
    fn nerve_levels_and_identities(s in sample_strategy(12)) {
        let nv = build_nerve(&s.groupoid, 3).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(nv.level_size(n), brute_force_level_size(&s.groupoid, n));
        }
        prop_assert!(check_simplicial_identities_exhaustively(&nv).is_ok(), "{:?}", check_simplicial_identities_exhaustively(&nv));
    }

    #[test]
    fn boundary_squares_to_zero(s in sample_strategy(12)) {
        let c = complex(&s.groupoid, 3);
        for n in 1..3 {
            prop_assert!((c.boundary(n) * c.boundary(n + 1)).is_zero());
        }
    }

    #[test]
    fn low_degree_homology_matches_isotropy(s in sample_strategy(12)) {
        let c = complex(&s.groupoid, 2);
        let (h0, h1) = expected_low_homology(&s);
        prop_assert_eq!(homology(&c, 0).unwrap(), h0);
        prop_assert_eq!(homology(&c, 1).unwrap(), h1);
    }

    #[test]
    fn homology_is_relabelling_invariant(s in sample_strategy(9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..s.groupoid.arrow_count()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = s.groupoid.relabel(&perm).unwrap();
        let (a, b) = (complex(&s.groupoid, 3), complex(&h, 3));
        for n in 0..=2 {
            prop_assert_eq!(homology(&a, n).unwrap(), homology(&b, n).unwrap());
        }
    }
}

#[test]
fn coefficient_routes_agree_on_corpus() {
    let coefficients = [
        FgAbGroup::cyclic(2),
        FgAbGroup::cyclic(3),
        FgAbGroup::cyclic(4),
        FgAbGroup::new(1, &[2]),
    ];
    for s in seeded_corpus(7, 24, 12) {
        let c = complex(&s.groupoid, 3);
        for n in 0..=2 {
            for a in &coefficients {
                let direct = chain_level_homology(&c, a, n).unwrap();
                assert_eq!(direct, homology_uct_route(&c, a, n).unwrap(), "{:?} n={n} {a}", s.kinds);
                if let Some(p) = a.as_prime_field() {
                    assert_eq!(direct, homology_mod_prime(&c, p, n).unwrap());
                }
            }
        }
    }
}

#[test]
fn kakutani_equivalent_pair_groupoids() {
    let point = complex(&FiniteGroupoid::pair(1), 3);
    for k in 2..=4 {
        let c = complex(&FiniteGroupoid::pair(k), 3);
        for n in 0..=2 {
            assert_eq!(homology(&c, n).unwrap(), homology(&point, n).unwrap(), "pair({k}) degree {n}");
        }
    }
}

#[test]
fn klein_group_homology() {
    // Kunneth for Z/2 x Z/2: (Z, (Z/2)^2, Z/2, (Z/2)^3).
    let g = FiniteGroupoid::group(&common::klein_table()).unwrap();
    let c = complex(&g, 4);
    let expected = [
        FgAbGroup::free(1),
        FgAbGroup::new(0, &[2, 2]),
        FgAbGroup::cyclic(2),
        FgAbGroup::new(0, &[2, 2, 2]),
    ];
    for (n, e) in expected.iter().enumerate() {
        assert_eq!(&homology(&c, n).unwrap(), e, "degree {n}");
    }
}
