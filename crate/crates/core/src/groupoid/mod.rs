//! Finite discrete groupoids given arrow by arrow.
//!
//! Arrows are indexed `0..arrow_count`. Units are themselves arrows, so the
//! unit arrow `u(x)` of an object `x` is the index `x`.

mod construct;
mod functor;
pub(crate) mod structure;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use construct::cyclic_table;
pub use functor::{validate_functor, EtaleFunctor, FunctorAxiom, FunctorReport, FunctorViolation};
pub use structure::{derive_structure, isotropy, orbits, quotient_by_normal_isotropy, reduction, Isotropy, Quotient, Reduction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("{what} has length {found}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{what} refers to index {value} at position {position}, out of range")]
    IndexOutOfRange {
        what: &'static str,
        position: usize,
        value: usize,
    },
    #[error("unit list must be strictly increasing")]
    UnsortedUnits,
    #[error("{what} of arrow {arrow} is {value}, which is not a unit")]
    EndpointNotUnit {
        what: &'static str,
        arrow: usize,
        value: usize,
    },
    #[error("groupoid axioms fail: {0}")]
    Axioms(ValidationReport),
    #[error("presentation axiom {axiom} fails at {witness:?}")]
    Presentation { axiom: &'static str, witness: Vec<usize> },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("not a partition of 0..{n}: {detail}")]
    NotAPartition { n: usize, detail: String },
    #[error("arrow {0} is not a unit")]
    NotAUnit(usize),
    #[error("not a wide subgroupoid: {0}")]
    NotASubgroupoid(String),
    #[error("arrow {0} is not an isotropy arrow")]
    NotIsotropy(usize),
    #[error("functor axioms fail: {0}")]
    InvalidFunctor(FunctorReport),
    #[error("subgroupoid is not normal: conjugating {inner} by {outer} leaves it")]
    NotNormal { outer: usize, inner: usize },
}

/// Which defining identity a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    /// Composition defined on a pair with `s(a) != r(b)`, or missing on a
    /// pair with `s(a) == r(b)`.
    CompositionDomain,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::G1 => f.write_str("(G1)"),
            Axiom::G2 => f.write_str("(G2)"),
            Axiom::G3 => f.write_str("(G3)"),
            Axiom::G4 => f.write_str("(G4)"),
            Axiom::G5 => f.write_str("(G5)"),
            Axiom::G6 => f.write_str("(G6)"),
            Axiom::CompositionDomain => f.write_str("(composition domain)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Arrow, pair or triple exhibiting the failure.
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.axiom, self.witness)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mentions(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A finite groupoid with explicit structure maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroupoid {
    arrow_count: usize,
    units: Vec<usize>,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    compose: BTreeMap<(usize, usize), usize>,
}

impl FiniteGroupoid {
    /// Assembles a groupoid after structural checks only (lengths, index
    /// ranges, endpoints being units). Axioms are checked by
    /// [`validate_groupoid`].
    pub fn new(
        arrow_count: usize,
        units: Vec<usize>,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        compose: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, GroupoidError> {
        for (what, v) in [("source", &source), ("range", &range), ("inverse", &inverse)] {
            if v.len() != arrow_count {
                return Err(GroupoidError::LengthMismatch {
                    what,
                    expected: arrow_count,
                    found: v.len(),
                });
            }
        }
        for (what, v) in [("units", &units), ("source", &source), ("range", &range), ("inverse", &inverse)] {
            if let Some((position, &value)) = v.iter().enumerate().find(|(_, &x)| x >= arrow_count) {
                return Err(GroupoidError::IndexOutOfRange { what, position, value });
            }
        }
        if units.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GroupoidError::UnsortedUnits);
        }
        for (&(a, b), &c) in &compose {
            for (position, value) in [(0, a), (1, b), (2, c)] {
                if value >= arrow_count {
                    return Err(GroupoidError::IndexOutOfRange {
                        what: "composition table",
                        position,
                        value,
                    });
                }
            }
        }
        let g = FiniteGroupoid {
            arrow_count,
            units,
            source,
            range,
            inverse,
            compose,
        };
        for a in 0..arrow_count {
            for (what, value) in [("source", g.source[a]), ("range", g.range[a])] {
                if !g.is_unit(value) {
                    return Err(GroupoidError::EndpointNotUnit { what, arrow: a, value });
                }
            }
        }
        Ok(g)
    }

    /// Like [`FiniteGroupoid::new`] but also requires every axiom to hold.
    pub fn new_validated(
        arrow_count: usize,
        units: Vec<usize>,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        compose: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, GroupoidError> {
        Self::new(arrow_count, units, source, range, inverse, compose)?.validated()
    }

    /// Builds the composition table on all pairs with `s(a) == r(b)` from a
    /// multiplication rule. Used by the constructors.
    pub(crate) fn from_rule(
        units: Vec<usize>,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupoidError> {
        let n = source.len();
        let mut by_range: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for b in 0..n {
            by_range.entry(range[b]).or_default().push(b);
        }
        let mut compose = BTreeMap::new();
        for a in 0..n {
            if let Some(bs) = by_range.get(&source[a]) {
                for &b in bs {
                    compose.insert((a, b), mul(a, b));
                }
            }
        }
        Self::new_validated(n, units, source, range, inverse, compose)
    }

    pub(crate) fn validated(self) -> Result<Self, GroupoidError> {
        let report = validate_groupoid(&self);
        if report.is_empty() {
            Ok(self)
        } else {
            Err(GroupoidError::Axioms(report))
        }
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_count
    }
    pub fn unit_count(&self) -> usize {
        self.units.len()
    }
    /// Sorted unit arrows.
    pub fn units(&self) -> &[usize] {
        &self.units
    }
    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }
    pub fn range(&self, a: usize) -> usize {
        self.range[a]
    }
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
    pub fn sources(&self) -> &[usize] {
        &self.source
    }
    pub fn ranges(&self) -> &[usize] {
        &self.range
    }
    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }
    pub fn composition_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.compose
    }

    /// `a . b` when defined.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose.get(&(a, b)).copied()
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units.binary_search(&a).is_ok()
    }

    /// Position of a unit arrow in [`FiniteGroupoid::units`].
    pub fn unit_position(&self, a: usize) -> Option<usize> {
        self.units.binary_search(&a).ok()
    }

    pub fn is_empty(&self) -> bool {
        self.arrow_count == 0
    }

    /// Arrows grouped by their range, keyed by unit position.
    pub fn arrows_by_range(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.units.len()];
        for a in 0..self.arrow_count {
            let p = self.unit_position(self.range[a]).expect("range is a unit");
            out[p].push(a);
        }
        out
    }

    /// Relabels arrows: old arrow `a` becomes `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GroupoidError> {
        let n = self.arrow_count;
        if perm.len() != n {
            return Err(GroupoidError::LengthMismatch {
                what: "permutation",
                expected: n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for (position, &p) in perm.iter().enumerate() {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(GroupoidError::IndexOutOfRange {
                    what: "permutation",
                    position,
                    value: p,
                });
            }
        }
        let mut units: Vec<usize> = self.units.iter().map(|&u| perm[u]).collect();
        units.sort_unstable();
        let mut source = vec![0; n];
        let mut range = vec![0; n];
        let mut inverse = vec![0; n];
        for a in 0..n {
            source[perm[a]] = perm[self.source[a]];
            range[perm[a]] = perm[self.range[a]];
            inverse[perm[a]] = perm[self.inverse[a]];
        }
        let compose = self
            .compose
            .iter()
            .map(|(&(a, b), &c)| ((perm[a], perm[b]), perm[c]))
            .collect();
        Self::new(n, units, source, range, inverse, compose)
    }
}

/// Checks (G1)-(G6) and that composition is defined exactly on pairs with
/// `s(a) == r(b)`. Every failure is reported with a witness.
pub fn validate_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let mut v = Vec::new();
    let mut push = |axiom, witness: Vec<usize>| v.push(Violation { axiom, witness });
    let n = g.arrow_count;

    for &x in &g.units {
        if g.range[x] != x || g.source[x] != x {
            push(Axiom::G1, vec![x]);
        }
    }
    for a in 0..n {
        if g.compose(g.range[a], a) != Some(a) || g.compose(a, g.source[a]) != Some(a) {
            push(Axiom::G2, vec![a]);
        }
        let ai = g.inverse[a];
        if g.range[ai] != g.source[a] || g.source[ai] != g.range[a] {
            push(Axiom::G3, vec![a]);
        }
        if g.compose(ai, a) != Some(g.source[a]) || g.compose(a, ai) != Some(g.range[a]) {
            push(Axiom::G4, vec![a]);
        }
    }
    for &(a, b) in g.compose.keys() {
        if g.source[a] != g.range[b] {
            push(Axiom::CompositionDomain, vec![a, b]);
        }
    }
    let by_range = g.arrows_by_range();
    let fibre = |x: usize| -> &[usize] {
        g.unit_position(x).map_or(&[][..], |p| &by_range[p][..])
    };
    for a in 0..n {
        for &b in fibre(g.source[a]) {
            match g.compose(a, b) {
                None => push(Axiom::CompositionDomain, vec![a, b]),
                Some(c) => {
                    if g.range[c] != g.range[a] || g.source[c] != g.source[b] {
                        push(Axiom::G5, vec![a, b]);
                    }
                }
            }
        }
    }
    for a in 0..n {
        for &b in fibre(g.source[a]) {
            let Some(ab) = g.compose(a, b) else { continue };
            for &c in fibre(g.source[b]) {
                let Some(bc) = g.compose(b, c) else { continue };
                let left = g.compose(ab, c);
                let right = g.compose(a, bc);
                if left.is_none() || left != right {
                    push(Axiom::G6, vec![a, b, c]);
                }
            }
        }
    }
    ValidationReport { violations: v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_is_valid() {
        assert!(validate_groupoid(&FiniteGroupoid::pair(3)).is_empty());
    }

    #[test]
    fn broken_associativity_names_triple() {
        // Z/3 with one product altered: 1*1 = 0 instead of 2.
        let g = FiniteGroupoid::group(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let mut table = g.composition_table().clone();
        table.insert((1, 1), 0);
        let bad = FiniteGroupoid::new(3, vec![0], vec![0; 3], vec![0; 3], vec![0, 2, 1], table).unwrap();
        let report = validate_groupoid(&bad);
        assert!(report.mentions(Axiom::G6));
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::G6 && v.witness.len() == 3));
    }

    #[test]
    fn composition_on_non_composable_pair_is_reported() {
        let g = FiniteGroupoid::pair(2);
        let mut table = g.composition_table().clone();
        // (0,1) . (0,1): s = 1 but r = 0.
        table.insert((1, 1), 1);
        let bad = FiniteGroupoid::new(
            4,
            g.units().to_vec(),
            g.sources().to_vec(),
            g.ranges().to_vec(),
            g.inverses().to_vec(),
            table,
        )
        .unwrap();
        let report = validate_groupoid(&bad);
        assert!(report
            .violations
            .contains(&Violation { axiom: Axiom::CompositionDomain, witness: vec![1, 1] }));
    }

    #[test]
    fn structural_errors_are_separate() {
        let r = FiniteGroupoid::new(1, vec![0], vec![0], vec![3], vec![0], BTreeMap::new());
        assert!(matches!(r, Err(GroupoidError::IndexOutOfRange { what: "range", .. })));
        let r = FiniteGroupoid::new(2, vec![0], vec![0, 1], vec![0, 0], vec![0, 1], BTreeMap::new());
        assert!(matches!(r, Err(GroupoidError::EndpointNotUnit { arrow: 1, .. })));
    }

    #[test]
    fn relabel_preserves_validity() {
        let g = FiniteGroupoid::pair(2);
        let h = g.relabel(&[3, 2, 1, 0]).unwrap();
        assert!(validate_groupoid(&h).is_empty());
        assert_eq!(h.units(), &[0, 3]);
        assert_eq!(h.relabel(&[3, 2, 1, 0]).unwrap(), g);
    }
}
