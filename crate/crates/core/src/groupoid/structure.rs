//! Orbits, reductions, isotropy, quotients and the composition-first
//! presentation.

use std::collections::{BTreeMap, BTreeSet};

use super::{EtaleFunctor, FiniteGroupoid, GroupoidError};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Partition of the units into orbits. Blocks hold unit arrows in increasing
/// order and are sorted by their least element.
pub fn orbits(g: &FiniteGroupoid) -> Vec<Vec<usize>> {
    let k = g.unit_count();
    let mut parent: Vec<usize> = (0..k).collect();
    for a in 0..g.arrow_count() {
        let s = find(&mut parent, g.unit_position(g.source(a)).expect("unit"));
        let r = find(&mut parent, g.unit_position(g.range(a)).expect("unit"));
        if s != r {
            let (lo, hi) = (s.min(r), s.max(r));
            parent[hi] = lo;
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..k {
        let root = find(&mut parent, p);
        blocks.entry(root).or_default().push(g.units()[p]);
    }
    blocks.into_values().collect()
}

pub fn is_minimal(g: &FiniteGroupoid) -> bool {
    orbits(g).len() == 1
}

impl FiniteGroupoid {
    /// True when `u` is a union of orbits.
    pub fn is_saturated(&self, u: &[usize]) -> bool {
        let set: BTreeSet<usize> = u.iter().copied().collect();
        orbits(self)
            .iter()
            .all(|b| b.iter().all(|x| set.contains(x)) || b.iter().all(|x| !set.contains(x)))
    }

    /// The composition-first data `(arrow count, composition table, inverse)`.
    pub fn to_presentation(&self) -> (usize, BTreeMap<(usize, usize), usize>, Vec<usize>) {
        (self.arrow_count, self.compose.clone(), self.inverse.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub groupoid: FiniteGroupoid,
    /// `embedding[k]` is the arrow of the ambient groupoid that became arrow `k`.
    pub embedding: Vec<usize>,
    /// Every orbit meets the chosen units.
    pub full: bool,
}

/// The reduction to the arrows with both endpoints in `u`.
pub fn reduction(g: &FiniteGroupoid, u: &[usize]) -> Result<Reduction, GroupoidError> {
    if let Some(&x) = u.iter().find(|&&x| !g.is_unit(x)) {
        return Err(GroupoidError::NotAUnit(x));
    }
    let set: BTreeSet<usize> = u.iter().copied().collect();
    let embedding: Vec<usize> = (0..g.arrow_count())
        .filter(|&a| set.contains(&g.source(a)) && set.contains(&g.range(a)))
        .collect();
    let full = orbits(g).iter().all(|b| b.iter().any(|x| set.contains(x)));
    Ok(Reduction {
        groupoid: restrict(g, &embedding),
        embedding,
        full,
    })
}

/// Restriction to an arrow subset closed under the structure maps. Arrows
/// are renumbered by their position in `keep` (which must be increasing).
pub(crate) fn restrict(g: &FiniteGroupoid, keep: &[usize]) -> FiniteGroupoid {
    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let units = g.units().iter().filter_map(|u| pos.get(u).copied()).collect();
    let map = |a: usize| pos[&a];
    let source = keep.iter().map(|&a| map(g.source(a))).collect();
    let range = keep.iter().map(|&a| map(g.range(a))).collect();
    let inverse = keep.iter().map(|&a| map(g.inverse(a))).collect();
    let compose = g
        .composition_table()
        .iter()
        .filter(|((a, b), _)| pos.contains_key(a) && pos.contains_key(b))
        .map(|(&(a, b), &c)| ((map(a), map(b)), map(c)))
        .collect();
    FiniteGroupoid::new(keep.len(), units, source, range, inverse, compose).expect("closed arrow subset")
}

/// Checks that an arrow subset contains every unit and is closed under
/// composition and inversion.
pub(crate) fn check_wide_subgroupoid(g: &FiniteGroupoid, arrows: &[usize]) -> Result<BTreeSet<usize>, GroupoidError> {
    let set: BTreeSet<usize> = arrows.iter().copied().collect();
    if let Some(&a) = set.iter().find(|&&a| a >= g.arrow_count()) {
        return Err(GroupoidError::NotASubgroupoid(format!("arrow {a} out of range")));
    }
    if let Some(&x) = g.units().iter().find(|x| !set.contains(x)) {
        return Err(GroupoidError::NotASubgroupoid(format!("unit {x} missing")));
    }
    for &a in &set {
        if !set.contains(&g.inverse(a)) {
            return Err(GroupoidError::NotASubgroupoid(format!("inverse of {a} missing")));
        }
    }
    for (&(a, b), &c) in g.composition_table() {
        if set.contains(&a) && set.contains(&b) && !set.contains(&c) {
            return Err(GroupoidError::NotASubgroupoid(format!("product of ({a}, {b}) missing")));
        }
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isotropy {
    pub subgroupoid: FiniteGroupoid,
    pub embedding: Vec<usize>,
    /// Isotropy consists of units only.
    pub principal: bool,
    /// A single orbit.
    pub minimal: bool,
}

pub fn isotropy(g: &FiniteGroupoid) -> Isotropy {
    let embedding: Vec<usize> = (0..g.arrow_count()).filter(|&a| g.source(a) == g.range(a)).collect();
    Isotropy {
        principal: embedding.len() == g.unit_count(),
        minimal: is_minimal(g),
        subgroupoid: restrict(g, &embedding),
        embedding,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub groupoid: FiniteGroupoid,
    /// The quotient map; surjective on arrows.
    pub functor: EtaleFunctor,
    /// Arrows of the ambient groupoid in each class.
    pub classes: Vec<Vec<usize>>,
}

/// Quotient by a wide normal subgroupoid `n` of isotropy arrows, given as
/// an arrow subset of `g`. Arrows of the quotient are the cosets
/// `N_{r(a)} a N_{s(a)}`, numbered by their least element.
pub fn quotient_by_normal_isotropy(g: &FiniteGroupoid, n: &[usize]) -> Result<Quotient, GroupoidError> {
    let set = check_wide_subgroupoid(g, n)?;
    if let Some(&a) = set.iter().find(|&&a| g.source(a) != g.range(a)) {
        return Err(GroupoidError::NotIsotropy(a));
    }
    let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &a in &set {
        at.entry(g.range(a)).or_default().push(a);
    }
    for a in 0..g.arrow_count() {
        let ai = g.inverse(a);
        for &m in &at[&g.source(a)] {
            let conj = g
                .compose(a, m)
                .and_then(|am| g.compose(am, ai))
                .expect("composable in a valid groupoid");
            if !set.contains(&conj) {
                return Err(GroupoidError::NotNormal { outer: a, inner: m });
            }
        }
    }
    // Normality makes N_r a = a N_s, so left cosets are the double cosets.
    let mut class_of = vec![usize::MAX; g.arrow_count()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.arrow_count() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = at[&g.range(a)]
            .iter()
            .map(|&m| g.compose(m, a).expect("composable"))
            .collect();
        members.sort_unstable();
        members.dedup();
        for &b in &members {
            class_of[b] = classes.len();
        }
        classes.push(members);
    }
    let units: Vec<usize> = g.units().iter().map(|&x| class_of[x]).collect();
    let rep = |c: usize| classes[c][0];
    let k = classes.len();
    let source = (0..k).map(|c| class_of[g.source(rep(c))]).collect();
    let range = (0..k).map(|c| class_of[g.range(rep(c))]).collect();
    let inverse = (0..k).map(|c| class_of[g.inverse(rep(c))]).collect();
    let mut sorted_units = units.clone();
    sorted_units.sort_unstable();
    let q = FiniteGroupoid::from_rule(sorted_units, source, range, inverse, |c, d| {
        // Distinct objects have distinct unit classes, so any representatives
        // of composable classes are composable.
        class_of[g.compose(rep(c), rep(d)).expect("composable")]
    })?;
    let functor = EtaleFunctor::new(g.clone(), q.clone(), class_of)?;
    Ok(Quotient {
        groupoid: q,
        functor,
        classes,
    })
}

/// Reconstructs units, range and source from a composition-first
/// presentation: `r(a) = a a^-1`, `s(a) = a^-1 a`.
pub fn derive_structure(
    arrow_count: usize,
    compose: &BTreeMap<(usize, usize), usize>,
    inverse: &[usize],
) -> Result<FiniteGroupoid, GroupoidError> {
    let n = arrow_count;
    if inverse.len() != n {
        return Err(GroupoidError::LengthMismatch {
            what: "inverse",
            expected: n,
            found: inverse.len(),
        });
    }
    if let Some((position, &value)) = inverse.iter().enumerate().find(|(_, &v)| v >= n) {
        return Err(GroupoidError::IndexOutOfRange { what: "inverse", position, value });
    }
    for (&(a, b), &c) in compose {
        for (position, value) in [(0, a), (1, b), (2, c)] {
            if value >= n {
                return Err(GroupoidError::IndexOutOfRange {
                    what: "composition table",
                    position,
                    value,
                });
            }
        }
    }
    let err = |axiom: &'static str, witness: Vec<usize>| GroupoidError::Presentation { axiom, witness };
    let m = |a: usize, b: usize| compose.get(&(a, b)).copied();
    for a in 0..n {
        if inverse[inverse[a]] != a {
            return Err(err("(G1')", vec![a]));
        }
    }
    for a in 0..n {
        if m(a, inverse[a]).is_none() {
            return Err(err("(G3')", vec![a]));
        }
    }
    let mut right: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in compose.keys() {
        right.entry(a).or_default().push(b);
    }
    for (&(a, b), &ab) in compose {
        for &c in right.get(&b).map_or(&[][..], |v| &v[..]) {
            let bc = m(b, c).expect("listed pair");
            match (m(ab, c), m(a, bc)) {
                (Some(x), Some(y)) if x == y => {}
                _ => return Err(err("(G2')", vec![a, b, c])),
            }
        }
        if m(inverse[a], ab) != Some(b) || m(ab, inverse[b]) != Some(a) {
            return Err(err("(G4')", vec![a, b]));
        }
    }
    let range: Vec<usize> = (0..n).map(|a| m(a, inverse[a]).expect("checked")).collect();
    let source: Vec<usize> = (0..n).map(|a| m(inverse[a], a).expect("checked")).collect();
    let units: Vec<usize> = range.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    FiniteGroupoid::new_validated(n, units, source, range, inverse.to_vec(), compose.clone())
}
