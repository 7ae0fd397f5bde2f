//! Standard constructors.

use std::collections::BTreeMap;

use super::{FiniteGroupoid, GroupoidError};

/// Identity and inverse table of a finite group given by its multiplication
/// table `table[a][b] = a * b`.
fn check_group(table: &[Vec<usize>]) -> Result<(usize, Vec<usize>), GroupoidError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupoidError::NotAGroup("empty table".into()));
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupoidError::NotAGroup(format!("row {a} has length {}", row.len())));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return Err(GroupoidError::NotAGroup(format!("entry {x} in row {a} is out of range")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(GroupoidError::NotAGroup(format!("associativity fails on ({a}, {b}, {c})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or_else(|| GroupoidError::NotAGroup("no identity element".into()))?;
    let mut inv = vec![0; n];
    for a in 0..n {
        inv[a] = (0..n)
            .find(|&b| table[a][b] == e && table[b][a] == e)
            .ok_or_else(|| GroupoidError::NotAGroup(format!("element {a} has no inverse")))?;
    }
    Ok((e, inv))
}

/// Multiplication table of `Z/m` with elements `0..m`.
pub fn cyclic_table(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect()
}

impl FiniteGroupoid {
    pub fn empty() -> Self {
        FiniteGroupoid::new(0, vec![], vec![], vec![], vec![], BTreeMap::new()).expect("empty groupoid")
    }

    /// A group as a one-object groupoid. Arrow `a` is element `a`.
    pub fn group(table: &[Vec<usize>]) -> Result<Self, GroupoidError> {
        let (e, inv) = check_group(table)?;
        let n = table.len();
        Self::from_rule(vec![e], vec![e; n], vec![e; n], inv, |a, b| table[a][b])
    }

    /// `Z/m` as a one-object groupoid.
    pub fn cyclic_group(m: usize) -> Self {
        Self::group(&cyclic_table(m)).expect("cyclic group table")
    }

    /// Pair groupoid on `n` points. Arrow `(i, j)` has index `i * n + j`,
    /// range `(i, i)` and source `(j, j)`.
    pub fn pair(n: usize) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let units = (0..n).map(|i| idx(i, i)).collect();
        let mut source = Vec::with_capacity(n * n);
        let mut range = Vec::with_capacity(n * n);
        let mut inverse = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                source.push(idx(j, j));
                range.push(idx(i, i));
                inverse.push(idx(j, i));
            }
        }
        Self::from_rule(units, source, range, inverse, |a, b| idx(a / n, b % n)).expect("pair groupoid")
    }

    /// Transformation groupoid of a group action. `action[g][x]` is `g . x`
    /// for `x` in `0..k`. Arrow `(g, x)` has index `g * k + x`, source
    /// `(e, x)` and range `(e, g . x)`; `(h, g.x) . (g, x) = (hg, x)`.
    pub fn transformation(table: &[Vec<usize>], action: &[Vec<usize>]) -> Result<Self, GroupoidError> {
        let (e, inv) = check_group(table)?;
        let n = table.len();
        if action.len() != n {
            return Err(GroupoidError::NotAnAction(format!("{} rows for {} group elements", action.len(), n)));
        }
        let k = action[0].len();
        for (g, row) in action.iter().enumerate() {
            if row.len() != k {
                return Err(GroupoidError::NotAnAction(format!("row {g} has length {}", row.len())));
            }
            if let Some(&y) = row.iter().find(|&&y| y >= k) {
                return Err(GroupoidError::NotAnAction(format!("image {y} in row {g} is out of range")));
            }
        }
        if let Some(x) = (0..k).find(|&x| action[e][x] != x) {
            return Err(GroupoidError::NotAnAction(format!("identity moves point {x}")));
        }
        for g in 0..n {
            for h in 0..n {
                for x in 0..k {
                    if action[table[h][g]][x] != action[h][action[g][x]] {
                        return Err(GroupoidError::NotAnAction(format!(
                            "compatibility fails for ({h}, {g}) at point {x}"
                        )));
                    }
                }
            }
        }
        let idx = |g: usize, x: usize| g * k + x;
        let units = (0..k).map(|x| idx(e, x)).collect();
        let mut source = Vec::with_capacity(n * k);
        let mut range = Vec::with_capacity(n * k);
        let mut inverse = Vec::with_capacity(n * k);
        for g in 0..n {
            for x in 0..k {
                source.push(idx(e, x));
                range.push(idx(e, action[g][x]));
                inverse.push(idx(inv[g], action[g][x]));
            }
        }
        Self::from_rule(units, source, range, inverse, |a, b| {
            let (h, g, x) = (a / k, b / k, b % k);
            idx(table[h][g], x)
        })
    }

    /// Equivalence-relation groupoid. Arrows are the related pairs `(i, j)`
    /// in lexicographic order; units are the diagonal pairs.
    pub fn equivalence_relation(n: usize, partition: &[Vec<usize>]) -> Result<Self, GroupoidError> {
        let mut block = vec![usize::MAX; n];
        for (b, part) in partition.iter().enumerate() {
            if part.is_empty() {
                return Err(GroupoidError::NotAPartition { n, detail: format!("block {b} is empty") });
            }
            for &i in part {
                if i >= n {
                    return Err(GroupoidError::NotAPartition { n, detail: format!("point {i} out of range") });
                }
                if block[i] != usize::MAX {
                    return Err(GroupoidError::NotAPartition { n, detail: format!("point {i} listed twice") });
                }
                block[i] = b;
            }
        }
        if let Some(i) = block.iter().position(|&b| b == usize::MAX) {
            return Err(GroupoidError::NotAPartition { n, detail: format!("point {i} not covered") });
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| block[i] == block[j])
            .collect();
        let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(a, &p)| (p, a)).collect();
        let units = (0..n).map(|i| index[&(i, i)]).collect();
        let source = pairs.iter().map(|&(_, j)| index[&(j, j)]).collect();
        let range = pairs.iter().map(|&(i, _)| index[&(i, i)]).collect();
        let inverse = pairs.iter().map(|&(i, j)| index[&(j, i)]).collect();
        Self::from_rule(units, source, range, inverse, |a, b| index[&(pairs[a].0, pairs[b].1)])
    }

    /// Group bundle: the disjoint union of one-object groupoids.
    pub fn group_bundle(tables: &[Vec<Vec<usize>>]) -> Result<Self, GroupoidError> {
        let parts = tables.iter().map(|t| Self::group(t)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::disjoint_union(&parts))
    }

    /// Unit groupoid on `k` points: every arrow is a unit.
    pub fn unit_groupoid(k: usize) -> Self {
        let ids: Vec<usize> = (0..k).collect();
        Self::from_rule(ids.clone(), ids.clone(), ids.clone(), ids, |a, _| a).expect("unit groupoid")
    }

    /// Disjoint union; arrows of later parts are shifted past earlier ones.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Self {
        let mut units = Vec::new();
        let mut source = Vec::new();
        let mut range = Vec::new();
        let mut inverse = Vec::new();
        let mut compose = BTreeMap::new();
        let mut off = 0;
        for p in parts {
            units.extend(p.units.iter().map(|&u| u + off));
            source.extend(p.source.iter().map(|&u| u + off));
            range.extend(p.range.iter().map(|&u| u + off));
            inverse.extend(p.inverse.iter().map(|&u| u + off));
            compose.extend(p.compose.iter().map(|(&(a, b), &c)| ((a + off, b + off), c + off)));
            off += p.arrow_count;
        }
        FiniteGroupoid::new(off, units, source, range, inverse, compose).expect("union of valid parts")
    }

    /// Offsets of each part's arrows inside [`FiniteGroupoid::disjoint_union`].
    pub fn union_offsets(parts: &[FiniteGroupoid]) -> Vec<usize> {
        let mut off = 0;
        parts
            .iter()
            .map(|p| {
                let o = off;
                off += p.arrow_count;
                o
            })
            .collect()
    }
}
