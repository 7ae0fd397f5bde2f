//! Nerves of finite groupoids: composable tuples, faces and degeneracies.

use std::fmt;

use thiserror::Error;

use crate::groupoid::{validate_functor, EtaleFunctor, FiniteGroupoid, FunctorReport};

pub const DEFAULT_TUPLE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("level {level} would hold {size} tuples, over the budget of {budget}")]
    BudgetExceeded { level: usize, size: u128, budget: usize },
    #[error("degree {n} outside the built range 0..={n_max}")]
    DegreeOutOfRange { n: usize, n_max: usize },
    #[error("operator index {i} out of range in degree {n}")]
    IndexOutOfRange { n: usize, i: usize },
    #[error("invalid functor: {0}")]
    InvalidFunctor(FunctorReport),
    #[error("nerve was built over a different groupoid than the functor's {0}")]
    GroupoidMismatch(&'static str),
    #[error("domain nerve reaches degree {dom}, codomain only {cod}")]
    DegreeMismatch { dom: usize, cod: usize },
}

/// The nerve truncated at degree `n_max`.
///
/// Level 0 lists the units as one-element tuples; level `n >= 1` lists the
/// composable `n`-tuples `(g1, ..., gn)` with `s(gi) = r(g(i+1))`. Every
/// level is in lexicographic order, so tuple lookup is a binary search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    groupoid: FiniteGroupoid,
    n_max: usize,
    levels: Vec<Vec<Vec<usize>>>,
    /// `faces[n][i]` for `1 <= n <= n_max`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][j]` for `0 <= n < n_max`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

/// Number of composable tuples in each level `0..=n_max`, without
/// enumerating them.
pub fn level_sizes(g: &FiniteGroupoid, n_max: usize) -> Vec<u128> {
    let k = g.unit_count();
    let mut sizes = vec![k as u128];
    // ending[p]: tuples whose last arrow has source at unit position p.
    let mut ending = vec![0u128; k];
    for a in 0..g.arrow_count() {
        ending[g.unit_position(g.source(a)).expect("unit")] += 1;
    }
    for n in 1..=n_max {
        if n > 1 {
            let mut next = vec![0u128; k];
            for a in 0..g.arrow_count() {
                let r = g.unit_position(g.range(a)).expect("unit");
                let s = g.unit_position(g.source(a)).expect("unit");
                next[s] = next[s].saturating_add(ending[r]);
            }
            ending = next;
        }
        sizes.push(ending.iter().fold(0u128, |acc, &c| acc.saturating_add(c)));
    }
    sizes
}

pub fn build_nerve(g: &FiniteGroupoid, n_max: usize) -> Result<Nerve, NerveError> {
    build_nerve_with_budget(g, n_max, DEFAULT_TUPLE_BUDGET)
}

pub fn build_nerve_with_budget(g: &FiniteGroupoid, n_max: usize, budget: usize) -> Result<Nerve, NerveError> {
    for (level, &size) in level_sizes(g, n_max).iter().enumerate() {
        if size > budget as u128 {
            return Err(NerveError::BudgetExceeded { level, size, budget });
        }
    }
    let by_range = g.arrows_by_range();
    let pos = |x: usize| g.unit_position(x).expect("unit");

    let mut levels: Vec<Vec<Vec<usize>>> = vec![g.units().iter().map(|&x| vec![x]).collect()];
    if n_max >= 1 {
        levels.push((0..g.arrow_count()).map(|a| vec![a]).collect());
    }
    for _ in 2..=n_max {
        let prev = levels.last().expect("nonempty");
        let mut next = Vec::new();
        for t in prev {
            let last = *t.last().expect("nonempty tuple");
            for &b in &by_range[pos(g.source(last))] {
                let mut u = t.clone();
                u.push(b);
                next.push(u);
            }
        }
        levels.push(next);
    }

    let mut nerve = Nerve {
        groupoid: g.clone(),
        n_max,
        levels,
        faces: vec![Vec::new()],
        degeneracies: Vec::new(),
    };
    for n in 1..=n_max {
        let maps = (0..=n)
            .map(|i| nerve.levels[n].iter().map(|t| nerve.locate(n - 1, &nerve.face_tuple(n, i, t))).collect())
            .collect();
        nerve.faces.push(maps);
    }
    for n in 0..n_max {
        let maps = (0..=n)
            .map(|j| {
                nerve.levels[n]
                    .iter()
                    .map(|t| nerve.locate(n + 1, &nerve.degeneracy_tuple(n, j, t)))
                    .collect()
            })
            .collect();
        nerve.degeneracies.push(maps);
    }
    Ok(nerve)
}

impl Nerve {
    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }
    pub fn n_max(&self) -> usize {
        self.n_max
    }
    pub fn level(&self, n: usize) -> &[Vec<usize>] {
        &self.levels[n]
    }
    pub fn level_size(&self, n: usize) -> usize {
        self.levels[n].len()
    }
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Position of a tuple in level `n`.
    pub fn index_of(&self, n: usize, t: &[usize]) -> Option<usize> {
        self.levels.get(n)?.binary_search_by(|u| u.as_slice().cmp(t)).ok()
    }

    fn locate(&self, n: usize, t: &[usize]) -> usize {
        self.index_of(n, t).expect("simplicial operators preserve composability")
    }

    fn face_tuple(&self, n: usize, i: usize, t: &[usize]) -> Vec<usize> {
        let g = &self.groupoid;
        if n == 1 {
            return vec![if i == 0 { g.source(t[0]) } else { g.range(t[0]) }];
        }
        if i == 0 {
            return t[1..].to_vec();
        }
        if i == n {
            return t[..n - 1].to_vec();
        }
        let mut out = Vec::with_capacity(n - 1);
        out.extend_from_slice(&t[..i - 1]);
        out.push(g.compose(t[i - 1], t[i]).expect("composable tuple"));
        out.extend_from_slice(&t[i + 1..]);
        out
    }

    fn degeneracy_tuple(&self, n: usize, j: usize, t: &[usize]) -> Vec<usize> {
        let g = &self.groupoid;
        if n == 0 {
            return vec![t[0]];
        }
        let mut out = Vec::with_capacity(n + 1);
        if j == n {
            out.extend_from_slice(t);
            out.push(g.source(t[n - 1]));
        } else {
            out.extend_from_slice(&t[..j]);
            out.push(g.range(t[j]));
            out.extend_from_slice(&t[j..]);
        }
        out
    }

    /// `d_i : level n -> level n-1` as an index array.
    pub fn face_map(&self, n: usize, i: usize) -> Result<&[usize], NerveError> {
        if n == 0 || n > self.n_max {
            return Err(NerveError::DegreeOutOfRange { n, n_max: self.n_max });
        }
        if i > n {
            return Err(NerveError::IndexOutOfRange { n, i });
        }
        Ok(&self.faces[n][i])
    }

    /// `s_j : level n -> level n+1` as an index array.
    pub fn degeneracy_map(&self, n: usize, j: usize) -> Result<&[usize], NerveError> {
        if n >= self.n_max {
            return Err(NerveError::DegreeOutOfRange { n, n_max: self.n_max });
        }
        if j > n {
            return Err(NerveError::IndexOutOfRange { n, i: j });
        }
        Ok(&self.degeneracies[n][j])
    }

    #[cfg(test)]
    pub(crate) fn corrupt_face(&mut self, n: usize, i: usize, k: usize, value: usize) {
        self.faces[n][i][k] = value;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialViolation {
    /// `"dd"`, `"ss"` or `"ds"`.
    pub identity: &'static str,
    /// Degree of the simplex the composite is applied to.
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub simplex: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplicialReport {
    pub violations: Vec<SimplicialViolation>,
}

impl SimplicialReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SimplicialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("all simplicial identities hold");
        }
        for v in &self.violations {
            writeln!(f, "{} identity fails at n={}, i={}, j={} on {:?}", v.identity, v.n, v.i, v.j, v.simplex)?;
        }
        Ok(())
    }
}

/// Checks every face-face, degeneracy-degeneracy and face-degeneracy
/// identity on every simplex up to the built degree.
pub fn check_simplicial_identities(nv: &Nerve) -> SimplicialReport {
    let mut out = Vec::new();
    let d = |n: usize, i: usize| &nv.faces[n][i];
    let s = |n: usize, j: usize| &nv.degeneracies[n][j];
    let mut fail = |identity, n, i, j, k: usize| {
        out.push(SimplicialViolation {
            identity,
            n,
            i,
            j,
            simplex: nv.levels[n][k].clone(),
        })
    };
    for n in 2..=nv.n_max {
        for j in 1..=n {
            for i in 0..j {
                for k in 0..nv.level_size(n) {
                    if d(n - 1, i)[d(n, j)[k]] != d(n - 1, j - 1)[d(n, i)[k]] {
                        fail("dd", n, i, j, k);
                    }
                }
            }
        }
    }
    for n in 0..nv.n_max.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                for k in 0..nv.level_size(n) {
                    if s(n + 1, i)[s(n, j)[k]] != s(n + 1, j + 1)[s(n, i)[k]] {
                        fail("ss", n, i, j, k);
                    }
                }
            }
        }
    }
    for n in 0..nv.n_max {
        for j in 0..=n {
            for i in 0..=n + 1 {
                for k in 0..nv.level_size(n) {
                    let lhs = d(n + 1, i)[s(n, j)[k]];
                    let rhs = if i < j {
                        s(n - 1, j - 1)[d(n, i)[k]]
                    } else if i == j || i == j + 1 {
                        k
                    } else {
                        s(n - 1, j)[d(n, i - 1)[k]]
                    };
                    if lhs != rhs {
                        fail("ds", n, i, j, k);
                    }
                }
            }
        }
    }
    SimplicialReport { violations: out }
}

/// Level maps `(h1, ..., hn) -> (f(h1), ..., f(hn))` of a functor, for
/// degrees `0..=nv_dom.n_max()`.
pub fn induced_simplicial_map(f: &EtaleFunctor, nv_dom: &Nerve, nv_cod: &Nerve) -> Result<Vec<Vec<usize>>, NerveError> {
    let report = validate_functor(f);
    if !report.is_empty() {
        return Err(NerveError::InvalidFunctor(report));
    }
    if f.domain() != nv_dom.groupoid() {
        return Err(NerveError::GroupoidMismatch("domain"));
    }
    if f.codomain() != nv_cod.groupoid() {
        return Err(NerveError::GroupoidMismatch("codomain"));
    }
    if nv_dom.n_max > nv_cod.n_max {
        return Err(NerveError::DegreeMismatch {
            dom: nv_dom.n_max,
            cod: nv_cod.n_max,
        });
    }
    let cod = nv_cod.groupoid();
    let mut maps = vec![f
        .unit_map()
        .iter()
        .map(|&y| cod.unit_position(y).expect("functor sends units to units"))
        .collect::<Vec<_>>()];
    for n in 1..=nv_dom.n_max {
        maps.push(
            nv_dom.levels[n]
                .iter()
                .map(|t| {
                    let image: Vec<usize> = t.iter().map(|&a| f.apply(a)).collect();
                    nv_cod.locate(n, &image)
                })
                .collect(),
        );
    }
    Ok(maps)
}
