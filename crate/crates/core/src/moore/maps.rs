use num_bigint::BigInt;

use super::homology::HomologyBasis;
use super::{moore_complex, pushforward_matrix, ChainComplex, MooreError};
use crate::abelian::{AbHom, IntMatrix};
use crate::groupoid::{validate_functor, EtaleFunctor, GroupoidError};
use crate::nerve::{build_nerve, induced_simplicial_map, Nerve};

/// Degreewise maps `f_n : C_n -> D_n` commuting with the boundaries, for
/// `n` up to the shorter of the two complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, maps: Vec<IntMatrix>) -> Result<Self, MooreError> {
        let top = source.length().min(target.length());
        if maps.len() != top + 1 {
            return Err(MooreError::ChainMapShape { n: maps.len().min(top + 1) });
        }
        for (n, f) in maps.iter().enumerate() {
            if f.rows() != target.rank(n) || f.cols() != source.rank(n) {
                return Err(MooreError::ChainMapShape { n });
            }
        }
        for n in 1..maps.len() {
            if target.boundary(n) * &maps[n] != &maps[n - 1] * source.boundary(n) {
                return Err(MooreError::NotAChainMap { n });
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = c.ranks().iter().map(|&r| IntMatrix::identity(r)).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }
    pub fn target(&self) -> &ChainComplex {
        &self.target
    }
    pub fn top_degree(&self) -> usize {
        self.maps.len() - 1
    }
    pub fn component(&self, n: usize) -> &IntMatrix {
        &self.maps[n]
    }
    pub fn components(&self) -> &[IntMatrix] {
        &self.maps
    }

    /// `other . self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap, MooreError> {
        if self.target != other.source {
            return Err(MooreError::ChainMapMismatch);
        }
        let top = self.top_degree().min(other.top_degree()).min(other.target.length());
        let maps = (0..=top).map(|n| &other.maps[n] * &self.maps[n]).collect();
        let source = self.source.truncate(top);
        let target = other.target.truncate(top);
        ChainMap::new(source, target, maps)
    }
}

/// A homotopy `h_n : C_n -> D_(n+1)` with `d h_n + h_(n-1) d = f_n - g_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainHomotopy {
    f: ChainMap,
    g: ChainMap,
    h: Vec<IntMatrix>,
}

impl ChainHomotopy {
    /// `h[n]` for `n = 0..h.len()`; the identity is checked in each of those degrees.
    pub fn new(f: ChainMap, g: ChainMap, h: Vec<IntMatrix>) -> Result<Self, MooreError> {
        if f.source != g.source || f.target != g.target {
            return Err(MooreError::ChainMapMismatch);
        }
        let hom = ChainHomotopy { f, g, h };
        hom.verify()?;
        Ok(hom)
    }

    pub fn f(&self) -> &ChainMap {
        &self.f
    }
    pub fn g(&self) -> &ChainMap {
        &self.g
    }
    pub fn component(&self, n: usize) -> &IntMatrix {
        &self.h[n]
    }
    pub fn components(&self) -> &[IntMatrix] {
        &self.h
    }

    pub fn verify(&self) -> Result<(), MooreError> {
        let (src, tgt) = (&self.f.source, &self.f.target);
        for (n, hn) in self.h.iter().enumerate() {
            if n + 1 > tgt.length() || n > self.f.top_degree() {
                return Err(MooreError::DegreeOutOfRange {
                    n,
                    max: tgt.length().saturating_sub(1).min(self.f.top_degree()),
                });
            }
            if hn.rows() != tgt.rank(n + 1) || hn.cols() != src.rank(n) {
                return Err(MooreError::NotAHomotopy { n });
            }
            let mut lhs = tgt.boundary(n + 1) * hn;
            if n > 0 {
                lhs = &lhs + &(&self.h[n - 1] * src.boundary(n));
            }
            if lhs != &self.f.maps[n] - &self.g.maps[n] {
                return Err(MooreError::NotAHomotopy { n });
            }
        }
        Ok(())
    }
}

/// Pushforward along the level maps of a functor.
pub fn induced_chain_map(f: &EtaleFunctor, nv_dom: &Nerve, nv_cod: &Nerve) -> Result<ChainMap, MooreError> {
    let levels = induced_simplicial_map(f, nv_dom, nv_cod)?;
    let maps = levels
        .iter()
        .enumerate()
        .map(|(n, m)| pushforward_matrix(m, nv_cod.level_size(n)))
        .collect::<Result<Vec<_>, _>>()?;
    let target = moore_complex(nv_cod).truncate(nv_dom.n_max());
    ChainMap::new(moore_complex(nv_dom), target, maps)
}

fn homology_window_check(cm: &ChainMap, n: usize) -> Result<(), MooreError> {
    if n + 1 > cm.top_degree() {
        return Err(MooreError::DegreeOutOfRange {
            n,
            max: cm.top_degree().saturating_sub(1),
        });
    }
    Ok(())
}

pub(crate) fn map_classes(cm: &ChainMap, n: usize, src: &HomologyBasis, tgt: &HomologyBasis) -> AbHom {
    let f = cm.component(n);
    let cols: Vec<Vec<BigInt>> = (0..src.group().num_generators())
        .map(|j| {
            tgt.class_of(&f.mul_vec(&src.representative(j)))
                .expect("chain maps send cycles to cycles")
        })
        .collect();
    let m = IntMatrix::from_columns(tgt.group().num_generators(), &cols);
    AbHom::new(src.group().clone(), tgt.group().clone(), m).expect("chain maps induce well-defined maps")
}

/// `H_n(f)` in canonical coordinates.
pub fn induced_homology_map(cm: &ChainMap, n: usize) -> Result<AbHom, MooreError> {
    homology_window_check(cm, n)?;
    let src = HomologyBasis::integral(cm.source(), n)?;
    let tgt = HomologyBasis::integral(cm.target(), n)?;
    Ok(map_classes(cm, n, &src, &tgt))
}

/// `H_n(f (x) Z/m)` in canonical coordinates.
pub fn induced_homology_map_mod(cm: &ChainMap, m: u64, n: usize) -> Result<AbHom, MooreError> {
    homology_window_check(cm, n)?;
    let src = HomologyBasis::modular(cm.source(), m, n)?;
    let tgt = HomologyBasis::modular(cm.target(), m, n)?;
    Ok(map_classes(cm, n, &src, &tgt))
}

/// The homotopy `h_n = sum_j (-1)^j (k_j)_*` between `rho_*` and `sigma_*`
/// built from a natural `theta` with `s(theta x) = rho(x)` and
/// `r(theta x) = sigma(x)`. `theta` is indexed by unit position in the
/// domain; the homotopy covers degrees `0..=n_max`.
pub fn similarity_chain_homotopy(
    rho: &EtaleFunctor,
    sigma: &EtaleFunctor,
    theta: &[usize],
    n_max: usize,
) -> Result<ChainHomotopy, MooreError> {
    if rho.domain() != sigma.domain() || rho.codomain() != sigma.codomain() {
        return Err(MooreError::FunctorMismatch);
    }
    for f in [rho, sigma] {
        let report = validate_functor(f);
        if !report.is_empty() {
            return Err(GroupoidError::InvalidFunctor(report).into());
        }
    }
    let (g, h) = (rho.domain(), rho.codomain());
    if theta.len() != g.unit_count() {
        return Err(MooreError::ThetaLength {
            expected: g.unit_count(),
            found: theta.len(),
        });
    }
    for (x, &t) in theta.iter().enumerate() {
        if t >= h.arrow_count() || h.source(t) != rho.unit_map()[x] || h.range(t) != sigma.unit_map()[x] {
            return Err(MooreError::SimilarityEndpoint { unit: g.units()[x] });
        }
    }
    let th = |unit: usize| theta[g.unit_position(unit).expect("unit")];
    for a in 0..g.arrow_count() {
        let lhs = h.compose(th(g.range(a)), rho.apply(a));
        let rhs = h.compose(sigma.apply(a), th(g.source(a)));
        if lhs.is_none() || lhs != rhs {
            return Err(MooreError::NotNatural { arrow: a });
        }
    }

    let nv_g = build_nerve(g, n_max + 1)?;
    let nv_h = build_nerve(h, n_max + 1)?;
    let f_rho = induced_chain_map(rho, &nv_g, &nv_h)?;
    let f_sigma = induced_chain_map(sigma, &nv_g, &nv_h)?;
    let mut hs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut m = IntMatrix::zeros(nv_h.level_size(n + 1), nv_g.level_size(n));
        for (col, t) in nv_g.level(n).iter().enumerate() {
            if n == 0 {
                let row = nv_h.index_of(1, &[th(t[0])]).expect("theta arrows are 1-simplices");
                m.set(row, col, BigInt::from(1));
                continue;
            }
            for j in 0..=n {
                let mut image = Vec::with_capacity(n + 1);
                image.extend(t[..j].iter().map(|&a| sigma.apply(a)));
                image.push(if j == 0 { th(g.range(t[0])) } else { th(g.source(t[j - 1])) });
                image.extend(t[j..].iter().map(|&a| rho.apply(a)));
                let row = nv_h.index_of(n + 1, &image).expect("naturality makes the tuple composable");
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let v = m.get(row, col) + sign;
                m.set(row, col, v);
            }
        }
        hs.push(m);
    }
    ChainHomotopy::new(f_rho, f_sigma, hs)
}
