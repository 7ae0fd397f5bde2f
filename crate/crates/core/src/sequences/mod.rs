//! Short and long exact sequences of chain complexes and homology groups.

mod cohomology;
mod mayer_vietoris;
mod naturality;
mod subgroupoid;
mod uct;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelian::hermite::hermite_with;
use crate::abelian::{check_exact_at, cokernel_group, integer_kernel, AbHom, AbelianError, FgAbGroup, IntMatrix};
use crate::algebra::CoefficientFunction;
use crate::groupoid::GroupoidError;
use crate::moore::{map_classes, ChainComplex, ChainMap, HomologyBasis, MooreError};
use crate::nerve::NerveError;

pub use cohomology::{
    cohomology, cohomology_result, dual_cochain_complex, pullback_coboundary, uct_cohomology, CochainComplex,
};
pub use mayer_vietoris::{mv_les, mv_ses, MvCover};
pub use naturality::{uct_naturality_check, NaturalityReport, SquareCheck};
pub use subgroupoid::subgroupoid_ses;
pub use uct::{uct_homology, UctSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("sequence is not exact in degree {degree}: {detail}")]
    NotExact { degree: usize, detail: &'static str },
    #[error("complexes have lengths {sub}, {mid}, {quot}")]
    LengthMismatch { sub: usize, mid: usize, quot: usize },
    #[error("chain maps do not connect the given complexes")]
    MapsDoNotConnect,
    #[error("map {index} does not run between its neighbouring nodes")]
    NodeMismatch { index: usize },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("cover set {which} is not a union of orbits")]
    NotSaturated { which: &'static str },
    #[error("degree {n} is not available")]
    MissingDegree { n: usize },
    #[error("integral homology is required")]
    NotIntegral,
    #[error(transparent)]
    Moore(#[from] MooreError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// `0 -> sub -> mid -> quot -> 0`, exact in every degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSES {
    sub: ChainComplex,
    mid: ChainComplex,
    quot: ChainComplex,
    inject: ChainMap,
    project: ChainMap,
}

impl ChainSES {
    /// Checks degreewise injectivity, surjectivity and `im = ker` as lattices.
    pub fn new(inject: ChainMap, project: ChainMap) -> Result<Self, SequenceError> {
        if inject.target() != project.source() {
            return Err(SequenceError::MapsDoNotConnect);
        }
        let (sub, mid, quot) = (inject.source().clone(), inject.target().clone(), project.target().clone());
        if sub.length() != mid.length() || mid.length() != quot.length() {
            return Err(SequenceError::LengthMismatch {
                sub: sub.length(),
                mid: mid.length(),
                quot: quot.length(),
            });
        }
        for n in 0..=mid.length() {
            let (i, p) = (inject.component(n), project.component(n));
            if i.rank() != i.cols() {
                return Err(SequenceError::NotExact {
                    degree: n,
                    detail: "inclusion is not injective",
                });
            }
            if !cokernel_group(p).is_trivial() {
                return Err(SequenceError::NotExact {
                    degree: n,
                    detail: "projection is not surjective",
                });
            }
            if !(p * i).is_zero() {
                return Err(SequenceError::NotExact {
                    degree: n,
                    detail: "projection does not kill the inclusion",
                });
            }
            let hi = hermite_with(i, false);
            if integer_kernel(p).columns().iter().any(|k| hi.solve(k).is_none()) {
                return Err(SequenceError::NotExact {
                    degree: n,
                    detail: "kernel of the projection exceeds the image of the inclusion",
                });
            }
        }
        Ok(ChainSES {
            sub,
            mid,
            quot,
            inject,
            project,
        })
    }

    pub fn sub(&self) -> &ChainComplex {
        &self.sub
    }
    pub fn mid(&self) -> &ChainComplex {
        &self.mid
    }
    pub fn quot(&self) -> &ChainComplex {
        &self.quot
    }
    pub fn inject(&self) -> &ChainMap {
        &self.inject
    }
    pub fn project(&self) -> &ChainMap {
        &self.project
    }
}

/// Which complex of the short exact sequence a node comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Sub,
    Mid,
    Quot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesNode {
    pub degree: usize,
    pub role: Role,
    pub group: FgAbGroup,
}

/// Nodes in sequence order with `maps[k] : nodes[k] -> nodes[k + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongExactSequence {
    nodes: Vec<LesNode>,
    maps: Vec<AbHom>,
    labels: [String; 3],
}

impl LongExactSequence {
    pub fn new(nodes: Vec<LesNode>, maps: Vec<AbHom>, labels: [String; 3]) -> Result<Self, SequenceError> {
        if maps.len() + 1 != nodes.len().max(1) {
            return Err(SequenceError::NodeMismatch { index: maps.len() });
        }
        for (k, m) in maps.iter().enumerate() {
            if m.domain() != &nodes[k].group || m.codomain() != &nodes[k + 1].group {
                return Err(SequenceError::NodeMismatch { index: k });
            }
        }
        Ok(LongExactSequence { nodes, maps, labels })
    }

    pub fn nodes(&self) -> &[LesNode] {
        &self.nodes
    }
    pub fn maps(&self) -> &[AbHom] {
        &self.maps
    }
    /// Display names for the three roles.
    pub fn labels(&self) -> &[String; 3] {
        &self.labels
    }
    pub fn label(&self, role: Role) -> &str {
        &self.labels[role as usize]
    }

    /// Connecting maps `H_n(quot) -> H_(n-1)(sub)` keyed by `n`.
    pub fn connecting_maps(&self) -> Vec<(usize, &AbHom)> {
        self.maps
            .iter()
            .enumerate()
            .filter(|(k, _)| self.nodes[*k].role == Role::Quot)
            .map(|(k, m)| (self.nodes[k].degree, m))
            .collect()
    }

    /// The node for `H_n` of the given role.
    pub fn node(&self, degree: usize, role: Role) -> Option<&LesNode> {
        self.nodes.iter().find(|x| x.degree == degree && x.role == role)
    }
}

impl fmt::Display for LongExactSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, node) in self.nodes.iter().enumerate() {
            write!(f, "H{}({}) = {}", node.degree, self.label(node.role), node.group)?;
            if let Some(m) = self.maps.get(k) {
                let kind = if node.role == Role::Quot { "connecting" } else { "induced" };
                write!(f, "  --{kind}{}-->", if m.is_zero() { ", zero" } else { "" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Interior nodes where exactness fails.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactnessReport {
    pub failures: Vec<usize>,
}

impl ExactnessReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_exactness(les: &LongExactSequence) -> ExactnessReport {
    let mut failures = Vec::new();
    for k in 1..les.maps.len() {
        if !matches!(check_exact_at(&les.maps[k - 1], &les.maps[k]), Ok(true)) {
            failures.push(k);
        }
    }
    ExactnessReport { failures }
}

fn bases(c: &ChainComplex, n_max: usize) -> Result<Vec<HomologyBasis>, SequenceError> {
    (0..=n_max)
        .map(|n| HomologyBasis::integral(c, n).map_err(SequenceError::from))
        .collect()
}

/// Lifts `b` to `mid`, applies the boundary and pulls back to `sub`: the
/// chain whose class is the image of `[p(b)]` under the connecting map.
fn connecting_chain(ses: &ChainSES, n: usize, lift: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = ses.mid.boundary(n).mul_vec(lift);
    hermite_with(ses.inject.component(n - 1), false).solve(&c)
}

/// Class in `H_(n-1)(sub)` of the connecting image of `[p(lift)]`, for any
/// chain `lift` in `mid_n` whose projection is a cycle.
pub fn connecting_class(ses: &ChainSES, n: usize, lift: &[BigInt]) -> Result<Vec<BigInt>, SequenceError> {
    if n == 0 || n + 1 > ses.mid.length() {
        return Err(SequenceError::MissingDegree { n });
    }
    let basis = HomologyBasis::integral(&ses.sub, n - 1)?;
    let a = connecting_chain(ses, n, lift).ok_or(SequenceError::NotExact {
        degree: n,
        detail: "projection of the lift is not a cycle",
    })?;
    basis.class_of(&a).ok_or(SequenceError::NotExact {
        degree: n - 1,
        detail: "pulled back chain is not a cycle",
    })
}

/// The long exact homology sequence of `ses` in degrees `n_max` down to 0.
pub fn snake_les(ses: &ChainSES, n_max: usize) -> Result<LongExactSequence, SequenceError> {
    snake_les_labelled(ses, n_max, ["sub", "mid", "quot"])
}

pub(crate) fn snake_les_labelled(
    ses: &ChainSES,
    n_max: usize,
    labels: [&str; 3],
) -> Result<LongExactSequence, SequenceError> {
    if n_max + 1 > ses.mid.length() {
        return Err(SequenceError::MissingDegree { n: n_max });
    }
    let (sb, mb, qb) = (bases(&ses.sub, n_max)?, bases(&ses.mid, n_max)?, bases(&ses.quot, n_max)?);
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    for n in (0..=n_max).rev() {
        let node = |role, b: &HomologyBasis| LesNode {
            degree: n,
            role,
            group: b.group().clone(),
        };
        nodes.push(node(Role::Sub, &sb[n]));
        maps.push(map_classes(&ses.inject, n, &sb[n], &mb[n]));
        nodes.push(node(Role::Mid, &mb[n]));
        maps.push(map_classes(&ses.project, n, &mb[n], &qb[n]));
        nodes.push(node(Role::Quot, &qb[n]));
        if n > 0 {
            maps.push(connecting_map(ses, n, &qb[n], &sb[n - 1])?);
        }
    }
    let labels = labels.map(str::to_string);
    let les = LongExactSequence::new(nodes, maps, labels)?;
    if let Some(&k) = verify_exactness(&les).failures.first() {
        return Err(SequenceError::NotExact {
            degree: les.nodes[k].degree,
            detail: "homology sequence",
        });
    }
    Ok(les)
}

fn connecting_map(ses: &ChainSES, n: usize, qb: &HomologyBasis, sb: &HomologyBasis) -> Result<AbHom, SequenceError> {
    let hp = hermite_with(ses.project.component(n), false);
    let hi = hermite_with(ses.inject.component(n - 1), false);
    let mut cols = Vec::new();
    for j in 0..qb.group().num_generators() {
        let z = qb.representative(j);
        let b = hp.solve(&z).ok_or(SequenceError::NotExact {
            degree: n,
            detail: "projection is not surjective",
        })?;
        let c = ses.mid.boundary(n).mul_vec(&b);
        let a = hi.solve(&c).ok_or(SequenceError::NotExact {
            degree: n - 1,
            detail: "boundary of the lift leaves the subcomplex",
        })?;
        cols.push(sb.class_of(&a).expect("pulled back chains are cycles"));
    }
    let m = IntMatrix::from_columns(sb.group().num_generators(), &cols);
    Ok(AbHom::new(qb.group().clone(), sb.group().clone(), m)?)
}

/// Finite-scale functions always have finite image; true iff the number of
/// distinct values is bounded by the size of the index set.
pub fn finite_image_predicate(zeta: &CoefficientFunction) -> bool {
    zeta.distinct_values() <= zeta.len()
}

/// Restriction of a complex to index subsets closed under the boundary
/// (`sets[n]` increasing).
pub(crate) fn restrict_complex(c: &ChainComplex, sets: &[Vec<usize>]) -> ChainComplex {
    let ranks = sets.iter().map(Vec::len).collect();
    let bs = (1..sets.len())
        .map(|n| c.boundary(n).select_rows(&sets[n - 1]).select_cols(&sets[n]))
        .collect();
    let out = ChainComplex::new(ranks, bs).expect("restriction of a complex");
    match c.labels() {
        Some(l) => {
            let labels = sets
                .iter()
                .enumerate()
                .map(|(n, s)| s.iter().map(|&k| l[n][k].clone()).collect())
                .collect();
            out.with_labels(labels)
        }
        None => out,
    }
}

/// `rows x subset.len()` matrix sending basis vector `k` to `e_(subset[k])`.
pub(crate) fn extension_matrix(rows: usize, subset: &[usize], sign: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, subset.len());
    for (k, &x) in subset.iter().enumerate() {
        m.set(x, k, BigInt::from(sign));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    /// sub = Z in degree 0, mid = (Z --2--> Z), quot = Z in degree 1, with a
    /// zero degree 2 so that degree 1 homology is defined.
    fn two_term() -> ChainSES {
        let z = |r, c| IntMatrix::zeros(r, c);
        let sub = ChainComplex::new(vec![1, 0, 0], vec![z(1, 0), z(0, 0)]).unwrap();
        let mid = ChainComplex::new(vec![1, 1, 0], vec![IntMatrix::from_rows(&[[2]]), z(1, 0)]).unwrap();
        let quot = ChainComplex::new(vec![0, 1, 0], vec![z(0, 1), z(1, 0)]).unwrap();
        let i = ChainMap::new(sub, mid.clone(), vec![IntMatrix::identity(1), z(1, 0), z(0, 0)]).unwrap();
        let p = ChainMap::new(mid, quot, vec![z(0, 1), IntMatrix::identity(1), z(0, 0)]).unwrap();
        ChainSES::new(i, p).unwrap()
    }

    #[test]
    fn two_term_connecting_map_is_doubling() {
        let les = snake_les(&two_term(), 1).unwrap();
        let conn = les.connecting_maps();
        assert_eq!(conn.len(), 1);
        let (n, d) = conn[0];
        assert_eq!(n, 1);
        assert_eq!(d.domain(), &FgAbGroup::free(1));
        assert_eq!(d.codomain(), &FgAbGroup::free(1));
        assert_eq!(d.matrix(), &IntMatrix::from_rows(&[[2]]));
        assert!(verify_exactness(&les).is_empty());
    }

    #[test]
    fn connecting_class_of_generator() {
        let s = two_term();
        let a = connecting_class(&s, 1, &crate::abelian::int_vec(&[1])).unwrap();
        assert_eq!(a, crate::abelian::int_vec(&[2]));
    }

    #[test]
    fn hand_built_sequence_fails_in_the_middle() {
        let z = FgAbGroup::free(1);
        let twice = AbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[[2]])).unwrap();
        let node = |d| LesNode {
            degree: d,
            role: Role::Mid,
            group: z.clone(),
        };
        let les = LongExactSequence::new(
            vec![node(2), node(1), node(0)],
            vec![twice.clone(), twice],
            ["a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        assert_eq!(verify_exactness(&les).failures, vec![1]);
    }

    #[test]
    fn rejects_non_exact_ses() {
        let c = ChainComplex::zero(vec![1, 0]);
        let twice = ChainMap::new(c.clone(), c.clone(), vec![IntMatrix::from_rows(&[[2]]), IntMatrix::zeros(0, 0)])
            .unwrap();
        let zero = ChainMap::new(c.clone(), ChainComplex::zero(vec![0, 0]), vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(0, 0)])
            .unwrap();
        assert!(matches!(
            ChainSES::new(twice, zero),
            Err(SequenceError::NotExact { degree: 0, .. })
        ));
    }
}
