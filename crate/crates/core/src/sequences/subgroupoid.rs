use super::{extension_matrix, restrict_complex, ChainSES, SequenceError};
use crate::groupoid::structure::check_wide_subgroupoid;
use crate::groupoid::FiniteGroupoid;
use crate::moore::{moore_complex, ChainMap};
use crate::nerve::build_nerve;

/// `0 -> C(G') -> C(G) -> C(G) / C(G') -> 0` for a wide subgroupoid `G'`
/// given by its arrows. The quotient has the tuples with at least one arrow
/// outside `G'` as basis.
pub fn subgroupoid_ses(g: &FiniteGroupoid, sub_arrows: &[usize], n_max: usize) -> Result<ChainSES, SequenceError> {
    let keep = check_wide_subgroupoid(g, sub_arrows)?;
    let nv = build_nerve(g, n_max)?;
    let mid = moore_complex(&nv);
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for n in 0..=n_max {
        let (a, b): (Vec<usize>, Vec<usize>) = (0..nv.level_size(n))
            .partition(|&k| nv.level(n)[k].iter().all(|x| keep.contains(x)));
        inside.push(a);
        outside.push(b);
    }
    let sub = restrict_complex(&mid, &inside);
    let quot = restrict_complex(&mid, &outside);
    let inject = ChainMap::new(
        sub,
        mid.clone(),
        inside.iter().enumerate().map(|(n, s)| extension_matrix(mid.rank(n), s, 1)).collect(),
    )?;
    let project = ChainMap::new(
        mid.clone(),
        quot,
        outside
            .iter()
            .enumerate()
            .map(|(n, s)| extension_matrix(mid.rank(n), s, 1).transpose())
            .collect(),
    )?;
    ChainSES::new(inject, project)
}
