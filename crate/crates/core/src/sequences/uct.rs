use super::SequenceError;
use crate::abelian::{tensor, tor1, AbHom, FgAbGroup, IntMatrix, Presentation};
use crate::moore::{CoefficientSpec, HomologyResult};

/// `0 -> left -> middle -> right -> 0` with the middle realized as the
/// coordinate direct sum of the outer terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UctSequence {
    pub degree: usize,
    pub coefficients: CoefficientSpec,
    pub left: FgAbGroup,
    pub middle: FgAbGroup,
    pub right: FgAbGroup,
    pub iota: AbHom,
    pub kappa: AbHom,
}

/// Canonical form of `left + right` with its inclusion and projection.
pub(crate) fn split(left: &FgAbGroup, right: &FgAbGroup) -> (FgAbGroup, AbHom, AbHom) {
    let (l, r) = (left.num_generators(), right.num_generators());
    let rel = IntMatrix::block_diag(&[&left.relation_matrix(), &right.relation_matrix()]);
    let pres = Presentation::new(&rel);
    let first: Vec<usize> = (0..l).collect();
    let last: Vec<usize> = (l..l + r).collect();
    let iota = AbHom::new(left.clone(), pres.group.clone(), pres.to_canonical.select_cols(&first))
        .expect("inclusion of a summand");
    let kappa = AbHom::new(pres.group.clone(), right.clone(), pres.from_canonical.select_rows(&last))
        .expect("projection onto a summand");
    (pres.group, iota, kappa)
}

pub(crate) fn integral_degree(h: &HomologyResult, n: usize) -> Result<&FgAbGroup, SequenceError> {
    if !h.coefficients.is_integers() {
        return Err(SequenceError::NotIntegral);
    }
    h.degree(n).ok_or(SequenceError::MissingDegree { n })
}

/// `0 -> H_n (x) A -> H_n(-; A) -> Tor(H_(n-1), A) -> 0`.
pub fn uct_homology(h: &HomologyResult, a: &CoefficientSpec, n: usize) -> Result<UctSequence, SequenceError> {
    let hn = integral_degree(h, n)?;
    let prev = if n == 0 {
        FgAbGroup::trivial()
    } else {
        integral_degree(h, n - 1)?.clone()
    };
    let ag = a.group();
    let left = tensor(hn, &ag);
    let right = tor1(&prev, &ag);
    let (middle, iota, kappa) = split(&left, &right);
    Ok(UctSequence {
        degree: n,
        coefficients: a.clone(),
        left,
        middle,
        right,
        iota,
        kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::check_exact_at;

    fn sft_combined() -> HomologyResult {
        HomologyResult::new(
            CoefficientSpec::Integers,
            vec![FgAbGroup::new(1, &[2, 2]), FgAbGroup::free(1), FgAbGroup::trivial()],
        )
    }

    #[test]
    fn mod_two_degree_one() {
        let u = uct_homology(&sft_combined(), &CoefficientSpec::Mod(2), 1).unwrap();
        assert_eq!(u.left, FgAbGroup::cyclic(2));
        assert_eq!(u.right, FgAbGroup::new(0, &[2, 2]));
        assert_eq!(u.middle, FgAbGroup::new(0, &[2, 2, 2]));
        assert!(u.iota.is_injective());
        assert!(u.kappa.is_surjective());
        assert!(check_exact_at(&u.iota, &u.kappa).unwrap());
    }

    #[test]
    fn odd_prime_and_integers() {
        let u = uct_homology(&sft_combined(), &CoefficientSpec::Mod(5), 1).unwrap();
        assert!(u.right.is_trivial());
        assert_eq!(u.middle, FgAbGroup::cyclic(5));
        let u = uct_homology(&sft_combined(), &CoefficientSpec::Integers, 0).unwrap();
        assert_eq!(u.middle, FgAbGroup::new(1, &[2, 2]));
        assert!(u.right.is_trivial());
    }

    #[test]
    fn missing_degree() {
        assert!(matches!(
            uct_homology(&sft_combined(), &CoefficientSpec::Mod(2), 3),
            Err(SequenceError::MissingDegree { n: 3 })
        ));
        let modular = HomologyResult::new(CoefficientSpec::Mod(2), vec![FgAbGroup::cyclic(2)]);
        assert!(matches!(
            uct_homology(&modular, &CoefficientSpec::Mod(2), 0),
            Err(SequenceError::NotIntegral)
        ));
    }
}
