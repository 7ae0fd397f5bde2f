use std::collections::BTreeSet;

use groupoid_homology::abelian::{
    check_exact_at, cokernel_group, ext1, hermite_solve, hom_group, integer_kernel, smith_normal_form, tensor, tor1,
    AbHom, FgAbGroup, HermiteForm, IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix_strategy(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

/// Groups given directly by invariant-factor chains.
const CHAINS: &[&[u64]] = &[&[], &[2], &[3], &[4], &[6], &[2, 2], &[2, 4], &[2, 6]];

fn finite_group() -> impl Strategy<Value = FgAbGroup> {
    (0..CHAINS.len()).prop_map(|i| FgAbGroup::new(0, CHAINS[i]))
}

/// A well-defined homomorphism: each entry is scaled into the subgroup of
/// elements whose order divides the source generator order.
fn hom_strategy(src: FgAbGroup, dst: FgAbGroup) -> impl Strategy<Value = AbHom> {
    let (r, c) = (dst.num_generators(), src.num_generators());
    prop::collection::vec(0i64..12, r * c).prop_map(move |v| {
        let so = src.generator_orders();
        let dsto = dst.generator_orders();
        let m = IntMatrix::from_fn(r, c, |i, j| {
            let step = &dsto[i] / dsto[i].gcd(&so[j]);
            BigInt::from(v[i * c + j]) * step
        });
        AbHom::new(src.clone(), dst.clone(), m).unwrap()
    })
}

fn composable_pair() -> impl Strategy<Value = (AbHom, AbHom)> {
    (finite_group(), finite_group(), finite_group())
        .prop_flat_map(|(a, b, c)| (hom_strategy(a, b.clone()), hom_strategy(b, c)))
}

fn element_set(elems: impl Iterator<Item = Vec<BigInt>>) -> BTreeSet<Vec<BigInt>> {
    elems.collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_a_valid_diagonalisation(m in matrix_strategy(5, 5, 9)) {
        let sf = smith_normal_form(&m);
        prop_assert!(sf.u().is_unimodular());
        prop_assert!(sf.v().is_unimodular());
        prop_assert_eq!(&(sf.u() * &m) * sf.v(), sf.s().clone());
        let d = sf.diagonal();
        prop_assert_eq!(d.len(), m.rows().min(m.cols()));
        let (nonzero, zeros) = d.split_at(sf.rank());
        for w in nonzero.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(nonzero.iter().all(|x| x.is_positive()));
        prop_assert!(zeros.iter().all(|x| x.is_zero()));
        prop_assert_eq!(sf.rank(), m.rank());
    }

    #[test]
    fn smith_invariants_survive_unimodular_changes(
        m in matrix_strategy(4, 4, 6),
        ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6),
    ) {
        let mut n = m.clone();
        for (i, j, k) in ops {
            let (i, j) = (i % n.rows(), j % n.rows());
            if i == j {
                continue;
            }
            // row_i += k row_j
            for c in 0..n.cols() {
                let v = n.get(i, c) + BigInt::from(k) * n.get(j, c);
                n.set(i, c, v);
            }
        }
        prop_assert_eq!(smith_normal_form(&m).diagonal(), smith_normal_form(&n).diagonal());
        prop_assert_eq!(cokernel_group(&m), cokernel_group(&n));
    }

    #[test]
    fn hermite_form_and_kernel(m in matrix_strategy(5, 6, 9)) {
        let hf = HermiteForm::new(&m);
        prop_assert_eq!(&m * hf.u(), hf.h().clone());
        prop_assert!(hf.u().is_unimodular());
        let k = integer_kernel(&m);
        prop_assert_eq!(k.cols(), m.cols() - m.rank());
        prop_assert!((&m * &k).is_zero());
    }

    #[test]
    fn hermite_solves_what_is_solvable(m in matrix_strategy(4, 4, 7), x in prop::collection::vec(-5i64..=5, 4)) {
        let x: Vec<BigInt> = x[..m.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = m.mul_vec(&x);
        let y = hermite_solve(&m, &b).unwrap().expect("b lies in the column lattice");
        prop_assert_eq!(m.mul_vec(&y), b.clone());
    }

    #[test]
    fn hermite_rejects_points_off_the_lattice(k in 2i64..=9, x in -20i64..=20) {
        // The lattice kZ in Z contains x exactly when k divides x.
        let m = IntMatrix::from_rows(&[[k]]);
        let r = hermite_solve(&m, &[BigInt::from(x)]).unwrap();
        prop_assert_eq!(r.is_some(), x % k == 0);
    }

    #[test]
    fn exactness_matches_brute_force((f, g) in composable_pair()) {
        let mid = f.codomain().clone();
        let image = element_set(f.domain().elements(64).unwrap().into_iter().map(|x| f.apply(&x)));
        let zero = g.codomain().zero_element();
        let kernel = element_set(mid.elements(64).unwrap().into_iter().filter(|y| g.apply(y) == zero));
        prop_assert_eq!(check_exact_at(&f, &g).unwrap(), image == kernel);
    }

    #[test]
    fn image_and_kernel_orders_multiply(f in (finite_group(), finite_group()).prop_flat_map(|(a, b)| hom_strategy(a, b))) {
        let (im, ker) = (f.image_group(), f.kernel_group());
        let dom = f.domain().order().unwrap();
        prop_assert_eq!(im.order().unwrap() * ker.order().unwrap(), dom);
        let brute = element_set(f.domain().elements(64).unwrap().into_iter().map(|x| f.apply(&x)));
        prop_assert_eq!(BigInt::from(brute.len()), im.order().unwrap());
    }
}

fn cyc(m: u64) -> FgAbGroup {
    FgAbGroup::cyclic(m)
}

#[test]
fn derived_functors_of_cyclic_groups() {
    for a in 1..=8u64 {
        for b in 1..=8u64 {
            let g = a.gcd(&b);
            assert_eq!(tensor(&cyc(a), &cyc(b)), cyc(g), "{a} {b}");
            assert_eq!(tor1(&cyc(a), &cyc(b)), cyc(g), "{a} {b}");
            assert_eq!(hom_group(&cyc(a), &cyc(b)), cyc(g), "{a} {b}");
            assert_eq!(ext1(&cyc(a), &cyc(b)), cyc(g), "{a} {b}");
        }
        assert_eq!(tensor(&FgAbGroup::free(1), &cyc(a)), cyc(a));
        assert!(tor1(&FgAbGroup::free(2), &cyc(a)).is_trivial());
        assert!(hom_group(&cyc(a), &FgAbGroup::free(1)).is_trivial());
        assert_eq!(ext1(&cyc(a), &FgAbGroup::free(1)), cyc(a));
    }
}

#[test]
fn hom_group_counts_homomorphisms() {
    // |Hom(G, H)| equals the number of well-defined generator images.
    for (a, b) in [(&[2u64, 4][..], &[4u64][..]), (&[6], &[2, 2]), (&[2, 2], &[2, 6])] {
        let (g, h) = (FgAbGroup::new(0, a), FgAbGroup::new(0, b));
        let elems = h.elements(64).unwrap();
        let orders = g.generator_orders();
        let mut count = 1usize;
        for d in &orders {
            count *= elems.iter().filter(|x| h.scale_element(d, x) == h.zero_element()).count();
        }
        assert_eq!(hom_group(&g, &h).order().unwrap(), BigInt::from(count));
    }
}

#[test]
fn golden_smith_reduction() {
    let m = IntMatrix::from_rows(&[[-1, -1], [-1, 1]]);
    let sf = smith_normal_form(&m);
    assert_eq!(sf.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
    assert!(sf.verify(&m));
    assert!(!sf.s().get(1, 1).is_zero());
}
