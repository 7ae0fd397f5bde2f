use std::collections::BTreeSet;

use super::{extension_matrix, restrict_complex, snake_les_labelled, ChainSES, LongExactSequence, SequenceError};
use crate::abelian::IntMatrix;
use crate::groupoid::structure::restrict;
use crate::groupoid::FiniteGroupoid;
use crate::moore::{moore_complex, ChainMap};
use crate::nerve::build_nerve;

/// Two sets of units covering the unit space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvCover {
    groupoid: FiniteGroupoid,
    u1: Vec<usize>,
    u2: Vec<usize>,
    saturated: bool,
}

impl MvCover {
    /// Both sets must be unions of orbits.
    pub fn new(g: &FiniteGroupoid, u1: &[usize], u2: &[usize]) -> Result<Self, SequenceError> {
        let cover = Self::new_unsaturated(g, u1, u2)?;
        if !g.is_saturated(&cover.u1) {
            return Err(SequenceError::NotSaturated { which: "u1" });
        }
        if !g.is_saturated(&cover.u2) {
            return Err(SequenceError::NotSaturated { which: "u2" });
        }
        Ok(cover)
    }

    /// Only requires `u1` and `u2` to be sets of units with union the unit
    /// space; usable with the support-local sequence.
    pub fn new_unsaturated(g: &FiniteGroupoid, u1: &[usize], u2: &[usize]) -> Result<Self, SequenceError> {
        let norm = |u: &[usize], which: &str| -> Result<Vec<usize>, SequenceError> {
            let set: BTreeSet<usize> = u.iter().copied().collect();
            if let Some(x) = set.iter().find(|&&x| x >= g.arrow_count() || !g.is_unit(x)) {
                return Err(SequenceError::InvalidCover(format!("{which} contains {x}, which is not a unit")));
            }
            Ok(set.into_iter().collect())
        };
        let (u1, u2) = (norm(u1, "u1")?, norm(u2, "u2")?);
        if let Some(x) = g.units().iter().find(|x| u1.binary_search(x).is_err() && u2.binary_search(x).is_err()) {
            return Err(SequenceError::InvalidCover(format!("unit {x} lies in neither set")));
        }
        let saturated = g.is_saturated(&u1) && g.is_saturated(&u2);
        Ok(MvCover {
            groupoid: g.clone(),
            u1,
            u2,
            saturated,
        })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }
    pub fn u1(&self) -> &[usize] {
        &self.u1
    }
    pub fn u2(&self) -> &[usize] {
        &self.u2
    }
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn overlap(&self) -> Vec<usize> {
        self.u1.iter().copied().filter(|x| self.u2.binary_search(x).is_ok()).collect()
    }

    /// Arrows with range and source in `u`.
    fn arrows_over(&self, u: &[usize]) -> Vec<usize> {
        let g = &self.groupoid;
        (0..g.arrow_count())
            .filter(|&a| u.binary_search(&g.range(a)).is_ok() && u.binary_search(&g.source(a)).is_ok())
            .collect()
    }

    /// The reduction to `u1 & u2`, arrows renumbered in increasing order.
    pub fn overlap_groupoid(&self) -> FiniteGroupoid {
        restrict(&self.groupoid, &self.arrows_over(&self.overlap()))
    }
}

/// `0 -> C(G|U1nU2) -> C(G|U1) + C(G|U2) -> C -> 0` with `a(x) = (x, -x)`
/// and `b(x1, x2) = x1 + x2`. The quotient is the full Moore complex, or with
/// `support_local` the chains supported on tuples inside `G|U1` or `G|U2`.
pub fn mv_ses(cover: &MvCover, n_max: usize, support_local: bool) -> Result<ChainSES, SequenceError> {
    if !support_local {
        if !cover.groupoid.is_saturated(&cover.u1) {
            return Err(SequenceError::NotSaturated { which: "u1" });
        }
        if !cover.groupoid.is_saturated(&cover.u2) {
            return Err(SequenceError::NotSaturated { which: "u2" });
        }
    }
    let g = &cover.groupoid;
    let nv = build_nerve(g, n_max)?;
    let full = moore_complex(&nv);
    let over = |u: &[usize]| -> Vec<Vec<usize>> {
        let arrows: BTreeSet<usize> = cover.arrows_over(u).into_iter().collect();
        (0..=n_max)
            .map(|n| {
                (0..nv.level_size(n))
                    .filter(|&k| nv.level(n)[k].iter().all(|x| arrows.contains(x)))
                    .collect()
            })
            .collect()
    };
    let (t1, t2, t12) = (over(&cover.u1), over(&cover.u2), over(&cover.overlap()));
    let tu: Vec<Vec<usize>> = (0..=n_max)
        .map(|n| {
            let s: BTreeSet<usize> = t1[n].iter().chain(&t2[n]).copied().collect();
            s.into_iter().collect()
        })
        .collect();
    let sub = restrict_complex(&full, &t12);
    let mid = restrict_complex(&full, &t1).direct_sum(&restrict_complex(&full, &t2));
    let quot = restrict_complex(&full, &tu);
    let positions = |inner: &[usize], outer: &[usize]| -> Vec<usize> {
        inner
            .iter()
            .map(|x| outer.binary_search(x).expect("nested tuple sets"))
            .collect()
    };
    let alpha: Vec<IntMatrix> = (0..=n_max)
        .map(|n| {
            let top = extension_matrix(t1[n].len(), &positions(&t12[n], &t1[n]), 1);
            let bottom = extension_matrix(t2[n].len(), &positions(&t12[n], &t2[n]), -1);
            top.vstack(&bottom)
        })
        .collect();
    let beta: Vec<IntMatrix> = (0..=n_max)
        .map(|n| {
            let left = extension_matrix(tu[n].len(), &positions(&t1[n], &tu[n]), 1);
            let right = extension_matrix(tu[n].len(), &positions(&t2[n], &tu[n]), 1);
            left.hstack(&right)
        })
        .collect();
    let inject = ChainMap::new(sub, mid.clone(), alpha)?;
    let project = ChainMap::new(mid, quot, beta)?;
    ChainSES::new(inject, project)
}

/// The Mayer-Vietoris sequence, nodes labelled overlap, pieces and whole.
pub fn mv_les(cover: &MvCover, n_max: usize, support_local: bool) -> Result<LongExactSequence, SequenceError> {
    let ses = mv_ses(cover, n_max + 1, support_local)?;
    snake_les_labelled(&ses, n_max, ["overlap", "pieces", "whole"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{direct_sum, FgAbGroup};
    use crate::sequences::{verify_exactness, Role};

    fn three() -> (FiniteGroupoid, Vec<usize>) {
        let parts = [
            FiniteGroupoid::cyclic_group(2),
            FiniteGroupoid::pair(2),
            FiniteGroupoid::cyclic_group(3),
        ];
        (FiniteGroupoid::disjoint_union(&parts), FiniteGroupoid::union_offsets(&parts))
    }

    #[test]
    fn three_components() {
        let (g, off) = three();
        // Units: X = {off0}, Y = {off1, off1 + 3}, Z = {off2}.
        let x = [off[0]];
        let y = vec![off[1], off[1] + 3];
        let z = vec![off[2]];
        let u1: Vec<usize> = x.iter().chain(&y).copied().collect();
        let u2: Vec<usize> = y.iter().chain(&z).copied().collect();
        let cover = MvCover::new(&g, &u1, &u2).unwrap();
        assert_eq!(cover.overlap_groupoid(), FiniteGroupoid::pair(2));
        let les = mv_les(&cover, 2, false).unwrap();
        assert!(verify_exactness(&les).is_empty());
        assert!(les.connecting_maps().iter().all(|(_, m)| m.is_zero()));
        assert_eq!(les.node(0, Role::Quot).unwrap().group, FgAbGroup::free(3));
        assert_eq!(les.node(1, Role::Quot).unwrap().group, direct_sum(&[FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)]));
        assert_eq!(les.label(Role::Sub), "overlap");
    }

    #[test]
    fn degenerate_and_disjoint_covers() {
        let (g, _) = three();
        let all = g.units().to_vec();
        let cover = MvCover::new(&g, &[], &all).unwrap();
        let ses = mv_ses(&cover, 2, false).unwrap();
        assert!(ses.sub().ranks().iter().all(|&r| r == 0));

        let same = MvCover::new(&g, &all, &all).unwrap();
        let les = mv_les(&same, 1, false).unwrap();
        assert!(verify_exactness(&les).is_empty());
        for n in 0..=1 {
            assert_eq!(les.node(n, Role::Sub).unwrap().group, les.node(n, Role::Quot).unwrap().group);
        }
    }

    #[test]
    fn unsaturated_rejected() {
        let g = FiniteGroupoid::pair(2);
        assert!(matches!(
            MvCover::new(&g, &[0], &[3]),
            Err(SequenceError::NotSaturated { which: "u1" })
        ));
        let cover = MvCover::new_unsaturated(&g, &[0], &[3]).unwrap();
        assert!(matches!(mv_ses(&cover, 2, false), Err(SequenceError::NotSaturated { .. })));
        let ses = mv_ses(&cover, 2, true).unwrap();
        // Off-diagonal arrows lie in neither piece.
        assert_eq!(ses.quot().rank(1), 2);
        assert!(MvCover::new(&g, &[0], &[0]).is_err());
        assert!(MvCover::new(&g, &[1], &[0, 3]).is_err());
    }
}
