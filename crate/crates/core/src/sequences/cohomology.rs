use super::uct::{integral_degree, split};
use super::{SequenceError, UctSequence};
use crate::abelian::{ext1, hom_group, integer_kernel, FgAbGroup, IntMatrix};
use crate::moore::{
    homology, rank_mod_p, ChainComplex, CoefficientSpec, HomologyBasis, HomologyResult, MooreError,
};
use crate::nerve::Nerve;

/// `C^n = Hom(C_n, A)` with `d^n = (d_(n+1))^T`, kept together with the chain
/// complex it dualizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    coefficients: CoefficientSpec,
    chains: ChainComplex,
    coboundaries: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn coefficients(&self) -> &CoefficientSpec {
        &self.coefficients
    }
    pub fn chains(&self) -> &ChainComplex {
        &self.chains
    }
    /// `d^n : C^n -> C^(n+1)` for `n < length`.
    pub fn coboundary(&self, n: usize) -> &IntMatrix {
        &self.coboundaries[n]
    }
    pub fn length(&self) -> usize {
        self.chains.length()
    }
    pub fn rank(&self, n: usize) -> usize {
        self.chains.rank(n)
    }
}

pub fn dual_cochain_complex(c: &ChainComplex, a: &CoefficientSpec) -> Result<CochainComplex, SequenceError> {
    if let CoefficientSpec::Mod(m) = a {
        CoefficientSpec::modulo(*m)?;
    }
    let coboundaries: Vec<IntMatrix> = (0..c.length()).map(|n| c.boundary(n + 1).transpose()).collect();
    for n in 1..coboundaries.len() {
        debug_assert!((&coboundaries[n] * &coboundaries[n - 1]).is_zero());
    }
    Ok(CochainComplex {
        coefficients: a.clone(),
        chains: c.clone(),
        coboundaries,
    })
}

/// `(d^n z)(t) = sum_i (-1)^i z(d_i t)` on the nerve, as a matrix from
/// functions on level `n` to functions on level `n + 1`.
pub fn pullback_coboundary(nv: &Nerve, n: usize) -> Result<IntMatrix, SequenceError> {
    if n + 1 > nv.n_max() {
        return Err(SequenceError::MissingDegree { n });
    }
    let mut m = IntMatrix::zeros(nv.level_size(n + 1), nv.level_size(n));
    for i in 0..=n + 1 {
        let face = nv.face_map(n + 1, i)?;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (t, &x) in face.iter().enumerate() {
            let v = m.get(t, x) + sign;
            m.set(t, x, v);
        }
    }
    Ok(m)
}

/// `ker d^n / im d^(n-1)`. Integers and prime fields are computed directly,
/// other coefficients through the Ext-Hom splitting.
pub fn cohomology(cc: &CochainComplex, n: usize) -> Result<FgAbGroup, SequenceError> {
    if n + 1 > cc.length() {
        return Err(MooreError::DegreeOutOfRange {
            n,
            max: cc.length().saturating_sub(1),
        }
        .into());
    }
    let a = &cc.coefficients;
    let dn = cc.coboundary(n);
    let prev = if n == 0 {
        IntMatrix::zeros(cc.rank(0), 0)
    } else {
        cc.coboundary(n - 1).clone()
    };
    if a.is_integers() {
        let cycles = integer_kernel(dn);
        return Ok(HomologyBasis::from_lattices(n, None, cycles, prev).group().clone());
    }
    if let Some(p) = a.prime_field() {
        let d = cc.rank(n) - rank_mod_p(dn, p) - rank_mod_p(&prev, p);
        return Ok(FgAbGroup::new(0, &vec![p; d]));
    }
    let h = HomologyResult::new(
        CoefficientSpec::Integers,
        (0..=n).map(|k| homology(&cc.chains, k)).collect::<Result<Vec<_>, _>>()?,
    );
    Ok(uct_cohomology(&h, a, n)?.middle)
}

/// Degrees `0..length` of the cochain complex.
pub fn cohomology_result(cc: &CochainComplex) -> Result<HomologyResult, SequenceError> {
    let groups = (0..cc.length())
        .map(|n| cohomology(cc, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HomologyResult::new(cc.coefficients.clone(), groups))
}

/// `0 -> Ext(H_(n-1), A) -> H^n(-; A) -> Hom(H_n, A) -> 0`.
pub fn uct_cohomology(h: &HomologyResult, a: &CoefficientSpec, n: usize) -> Result<UctSequence, SequenceError> {
    let hn = integral_degree(h, n)?;
    let prev = if n == 0 {
        FgAbGroup::trivial()
    } else {
        integral_degree(h, n - 1)?.clone()
    };
    let ag = a.group();
    let left = ext1(&prev, &ag);
    let right = hom_group(hn, &ag);
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
    use crate::groupoid::FiniteGroupoid;
    use crate::moore::{homology_result, moore_complex};
    use crate::nerve::build_nerve;

    fn complex(g: &FiniteGroupoid, n: usize) -> (Nerve, ChainComplex) {
        let nv = build_nerve(g, n).unwrap();
        let c = moore_complex(&nv);
        (nv, c)
    }

    #[test]
    fn cyclic_two_integral() {
        let (_, c) = complex(&FiniteGroupoid::cyclic_group(2), 4);
        let cc = dual_cochain_complex(&c, &CoefficientSpec::Integers).unwrap();
        let h: Vec<FgAbGroup> = (0..3).map(|n| cohomology(&cc, n).unwrap()).collect();
        assert_eq!(h, vec![FgAbGroup::free(1), FgAbGroup::trivial(), FgAbGroup::cyclic(2)]);
        let hr = homology_result(&c, &CoefficientSpec::Integers).unwrap();
        for (n, g) in h.iter().enumerate() {
            assert_eq!(&uct_cohomology(&hr, &CoefficientSpec::Integers, n).unwrap().middle, g);
        }
        let u = uct_cohomology(&hr, &CoefficientSpec::Integers, 2).unwrap();
        assert_eq!(u.left, FgAbGroup::cyclic(2));
        assert!(u.right.is_trivial());
    }

    #[test]
    fn cyclic_two_mod_two() {
        let (_, c) = complex(&FiniteGroupoid::cyclic_group(2), 3);
        let cc = dual_cochain_complex(&c, &CoefficientSpec::Mod(2)).unwrap();
        for n in 0..3 {
            assert_eq!(cohomology(&cc, n).unwrap(), FgAbGroup::cyclic(2));
        }
    }

    #[test]
    fn unit_groupoid() {
        let (_, c) = complex(&FiniteGroupoid::unit_groupoid(3), 3);
        let cc = dual_cochain_complex(&c, &CoefficientSpec::Integers).unwrap();
        assert_eq!(cohomology(&cc, 0).unwrap(), FgAbGroup::free(3));
        assert!(cohomology(&cc, 1).unwrap().is_trivial());
        assert_eq!(cc.coboundary(1), &IntMatrix::identity(3));
        assert!(cc.coboundary(0).is_zero());
    }

    #[test]
    fn pullback_matches_transpose() {
        let (nv, c) = complex(&FiniteGroupoid::pair(2), 3);
        for n in 0..3 {
            assert_eq!(pullback_coboundary(&nv, n).unwrap(), c.boundary(n + 1).transpose());
        }
    }

    #[test]
    fn composite_coefficients() {
        let (_, c) = complex(&FiniteGroupoid::cyclic_group(2), 3);
        let a = CoefficientSpec::Group(FgAbGroup::new(1, &[2]));
        let cc = dual_cochain_complex(&c, &a).unwrap();
        // Hom(Z, Z + Z/2) = Z + Z/2 in degree 0.
        assert_eq!(cohomology(&cc, 0).unwrap(), FgAbGroup::new(1, &[2]));
        let hr = HomologyResult::new(
            CoefficientSpec::Integers,
            vec![FgAbGroup::free(1), FgAbGroup::cyclic(2), FgAbGroup::trivial()],
        );
        assert!(uct_cohomology(&hr, &a, 0).unwrap().left.is_trivial());
        assert!(uct_cohomology(&hr, &a, 1).unwrap().left.is_trivial());
        assert_eq!(uct_cohomology(&hr, &a, 2).unwrap().left, FgAbGroup::new(0, &[2, 2]));
    }
}
