//! Small groupoids assembled from standard pieces, shared by the
//! integration tests.
#![allow(dead_code)]

use groupoid_homology::groupoid::{cyclic_table, FiniteGroupoid};
use groupoid_homology::nerve::Nerve;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Klein four-group with `a * b = a xor b`.
pub fn klein_table() -> Vec<Vec<usize>> {
    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
}

/// A building block together with local arrow sets that form wide
/// subgroupoids of it.
pub struct Piece {
    pub groupoid: FiniteGroupoid,
    pub wide_subgroupoids: Vec<Vec<usize>>,
}

pub const PIECE_COUNT: usize = 11;

pub fn piece(kind: usize) -> Piece {
    let (groupoid, extra): (FiniteGroupoid, Vec<Vec<usize>>) = match kind {
        0 => (FiniteGroupoid::cyclic_group(1), vec![]),
        1 => (FiniteGroupoid::cyclic_group(2), vec![]),
        2 => (FiniteGroupoid::cyclic_group(3), vec![]),
        3 => (FiniteGroupoid::cyclic_group(4), vec![vec![0, 2]]),
        4 => (FiniteGroupoid::group(&klein_table()).unwrap(), vec![vec![0, 1], vec![0, 2]]),
        5 => (FiniteGroupoid::pair(2), vec![]),
        6 => (FiniteGroupoid::pair(3), vec![vec![0, 1, 3, 4, 8]]),
        7 => (FiniteGroupoid::unit_groupoid(2), vec![]),
        8 => (
            FiniteGroupoid::transformation(&cyclic_table(2), &[vec![0, 1], vec![1, 0]]).unwrap(),
            vec![],
        ),
        9 => (
            FiniteGroupoid::transformation(&cyclic_table(2), &[vec![0, 1, 2], vec![1, 0, 2]]).unwrap(),
            vec![],
        ),
        10 => (FiniteGroupoid::equivalence_relation(3, &[vec![0, 2], vec![1]]).unwrap(), vec![]),
        _ => unreachable!("piece kind out of range"),
    };
    let mut wide = vec![groupoid.units().to_vec(), (0..groupoid.arrow_count()).collect()];
    wide.extend(extra);
    Piece {
        groupoid,
        wide_subgroupoids: wide,
    }
}

/// A relabelled disjoint union with a chosen wide subgroupoid.
#[derive(Debug, Clone)]
pub struct Sample {
    pub groupoid: FiniteGroupoid,
    pub sub_arrows: Vec<usize>,
    pub kinds: Vec<usize>,
}

/// Assembles pieces, relabels by `perm` and picks wide subgroupoid
/// `choice[i] % len` in piece `i`.
pub fn assemble(kinds: &[usize], choice: &[usize], perm: &[usize]) -> Sample {
    let pieces: Vec<Piece> = kinds.iter().map(|&k| piece(k)).collect();
    let parts: Vec<FiniteGroupoid> = pieces.iter().map(|p| p.groupoid.clone()).collect();
    let offsets = FiniteGroupoid::union_offsets(&parts);
    let union = FiniteGroupoid::disjoint_union(&parts);
    let mut sub = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let w = &p.wide_subgroupoids[choice[i] % p.wide_subgroupoids.len()];
        sub.extend(w.iter().map(|&a| perm[offsets[i] + a]));
    }
    sub.sort_unstable();
    Sample {
        groupoid: union.relabel(perm).unwrap(),
        sub_arrows: sub,
        kinds: kinds.to_vec(),
    }
}

fn arrows_of(kinds: &[usize]) -> usize {
    kinds.iter().map(|&k| piece(k).groupoid.arrow_count()).sum()
}

/// Random samples with at most `max_arrows` arrows.
pub fn sample_strategy(max_arrows: usize) -> impl Strategy<Value = Sample> {
    prop::collection::vec(0..PIECE_COUNT, 1..=3)
        .prop_filter("too many arrows", move |k| arrows_of(k) <= max_arrows)
        .prop_flat_map(|kinds| {
            let n = arrows_of(&kinds);
            let len = kinds.len();
            (
                Just(kinds),
                prop::collection::vec(0usize..4, len),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(kinds, choice, perm)| assemble(&kinds, &choice, &perm))
}

/// A fixed, seeded corpus of samples.
pub fn seeded_corpus(seed: u64, count: usize, max_arrows: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let len = rng.gen_range(1..=3);
        let kinds: Vec<usize> = (0..len).map(|_| rng.gen_range(0..PIECE_COUNT)).collect();
        let n = arrows_of(&kinds);
        if n > max_arrows {
            continue;
        }
        let choice: Vec<usize> = (0..len).map(|_| rng.gen_range(0..4)).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        out.push(assemble(&kinds, &choice, &perm));
    }
    out
}

/// Each orbit goes to `u1`, `u2` or both according to `mask[i] % 3`.
pub fn saturated_cover(g: &FiniteGroupoid, mask: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut u1 = Vec::new();
    let mut u2 = Vec::new();
    for (i, orbit) in groupoid_homology::groupoid::orbits(g).into_iter().enumerate() {
        match mask.get(i).copied().unwrap_or(2) % 3 {
            0 => u1.extend(orbit),
            1 => u2.extend(orbit),
            _ => {
                u1.extend(orbit.iter().copied());
                u2.extend(orbit);
            }
        }
    }
    (u1, u2)
}

/// Same as [`saturated_cover`] but unit by unit.
pub fn unit_cover(g: &FiniteGroupoid, mask: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut u1 = Vec::new();
    let mut u2 = Vec::new();
    for (i, &x) in g.units().iter().enumerate() {
        match mask.get(i).copied().unwrap_or(2) % 3 {
            0 => u1.push(x),
            1 => u2.push(x),
            _ => {
                u1.push(x);
                u2.push(x);
            }
        }
    }
    (u1, u2)
}

/// Verifies every simplicial identity on every simplex using only the
/// face and degeneracy index arrays.
pub fn check_simplicial_identities_exhaustively(nv: &Nerve) -> Result<(), String> {
    let top = nv.n_max();
    let d = |n: usize, i: usize| nv.face_map(n, i).unwrap();
    let s = |n: usize, j: usize| nv.degeneracy_map(n, j).unwrap();
    for n in 2..=top {
        for j in 1..=n {
            for i in 0..j {
                for k in 0..nv.level_size(n) {
                    if d(n - 1, i)[d(n, j)[k]] != d(n - 1, j - 1)[d(n, i)[k]] {
                        return Err(format!("d{i} d{j} at level {n}, simplex {k}"));
                    }
                }
            }
        }
    }
    for n in 0..top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                for k in 0..nv.level_size(n) {
                    let lhs = d(n + 1, i)[s(n, j)[k]];
                    let rhs = if i == j || i == j + 1 {
                        k
                    } else if i < j {
                        s(n - 1, j - 1)[d(n, i)[k]]
                    } else {
                        s(n - 1, j)[d(n, i - 1)[k]]
                    };
                    if lhs != rhs {
                        return Err(format!("d{i} s{j} at level {n}, simplex {k}"));
                    }
                }
            }
        }
    }
    for n in 0..top.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                for k in 0..nv.level_size(n) {
                    if s(n + 1, i)[s(n, j)[k]] != s(n + 1, j + 1)[s(n, i)[k]] {
                        return Err(format!("s{i} s{j} at level {n}, simplex {k}"));
                    }
                }
            }
        }
    }
    Ok(())
}
