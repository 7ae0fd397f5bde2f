mod common;

use common::sample_strategy;
use groupoid_homology::abelian::FgAbGroup;
use groupoid_homology::algebra::{
    convolve, local_unit, pairing_pushforward_sides, push_forward_integers, CoefficientFunction, GroupoidFunction,
};
use groupoid_homology::groupoid::FiniteGroupoid;
use num_bigint::BigInt;
use proptest::prelude::*;

fn values(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, len)
}

fn function_triple(max_arrows: usize) -> impl Strategy<Value = (FiniteGroupoid, Vec<i64>, Vec<i64>, Vec<i64>)> {
    sample_strategy(max_arrows).prop_flat_map(|s| {
        let n = s.groupoid.arrow_count();
        (Just(s.groupoid), values(n), values(n), values(n))
    })
}

/// Sum of `f1(a) f2(b)` over composable pairs with `a . b = c`.
fn brute_force_convolution(g: &FiniteGroupoid, f1: &[i64], f2: &[i64]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); g.arrow_count()];
    for (&(a, b), &c) in g.composition_table() {
        out[c] += BigInt::from(f1[a] * f2[b]);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_associative_with_unit((g, a, b, c) in function_triple(12)) {
        let f = |v: &[i64]| GroupoidFunction::from_i64(&g, v).unwrap();
        let (fa, fb, fc) = (f(&a), f(&b), f(&c));
        let left = convolve(&g, &convolve(&g, &fa, &fb).unwrap(), &fc).unwrap();
        let right = convolve(&g, &fa, &convolve(&g, &fb, &fc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let e = local_unit(&g);
        prop_assert_eq!(convolve(&g, &e, &fa).unwrap(), fa.clone());
        prop_assert_eq!(convolve(&g, &fa, &e).unwrap(), fa.clone());
        let ab = convolve(&g, &fa, &fb).unwrap();
        prop_assert_eq!(ab.values(), &brute_force_convolution(&g, &a, &b)[..]);
    }

    #[test]
    fn pair_groupoid_convolution_is_matrix_product(n in 1usize..=4, seed in prop::collection::vec(-5i64..=5, 32)) {
        let g = FiniteGroupoid::pair(n);
        let a = &seed[..n * n];
        let b = &seed[16..16 + n * n];
        let prod = convolve(&g, &GroupoidFunction::from_i64(&g, a).unwrap(), &GroupoidFunction::from_i64(&g, b).unwrap()).unwrap();
        for i in 0..n {
            for j in 0..n {
                let entry: i64 = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum();
                prop_assert_eq!(prod.get(i * n + j), &BigInt::from(entry));
            }
        }
    }

    #[test]
    fn pushforward_pairing_identity(
        f in values(10),
        pi in prop::collection::vec(0usize..4, 10),
        zeta in prop::collection::vec((-9i64..=9, -9i64..=9), 4),
        choice in 0usize..3,
    ) {
        let group = [FgAbGroup::new(1, &[2]), FgAbGroup::cyclic(6), FgAbGroup::free(2)][choice].clone();
        let vals: Vec<Vec<BigInt>> = zeta
            .iter()
            .map(|&(x, y)| [x, y][..group.num_generators()].iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let zeta = CoefficientFunction::new(&group, vals).unwrap();
        let f: Vec<BigInt> = f.into_iter().map(BigInt::from).collect();
        let (lhs, rhs) = pairing_pushforward_sides(&f, &pi, &zeta).unwrap();
        prop_assert_eq!(lhs, rhs);
        let total: BigInt = f.iter().sum();
        let pushed: BigInt = push_forward_integers(&f, &pi, 4).unwrap().iter().sum();
        prop_assert_eq!(total, pushed);
    }
}
