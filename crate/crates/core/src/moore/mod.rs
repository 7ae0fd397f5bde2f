//! Moore chain complexes of nerves and their homology.

mod coefficients;
mod homology;
mod maps;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::abelian::IntMatrix;
use crate::groupoid::GroupoidError;
use crate::nerve::{Nerve, NerveError};

pub use coefficients::CoefficientSpec;
pub use homology::{
    chain_level_homology, homology, homology_mod_prime, homology_result, homology_uct_route, homology_with_coefficients,
    rank_mod_p, HomologyBasis, HomologyResult,
};
pub(crate) use maps::map_classes;
pub use maps::{
    induced_chain_map, induced_homology_map, induced_homology_map_mod, similarity_chain_homotopy, ChainHomotopy, ChainMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MooreError {
    #[error("degree {n} outside the valid window 0..={max}")]
    DegreeOutOfRange { n: usize, max: usize },
    #[error("boundary in degree {n} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    BoundaryShape {
        n: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("boundary composite d{n} d{} is nonzero", n + 1)]
    NotAComplex { n: usize },
    #[error("chain map does not commute with boundaries in degree {n}")]
    NotAChainMap { n: usize },
    #[error("chain map component in degree {n} has the wrong shape")]
    ChainMapShape { n: usize },
    #[error("homotopy identity fails in degree {n}")]
    NotAHomotopy { n: usize },
    #[error("map sends position {position} to {value}, outside 0..{size}")]
    MapOutOfRange { position: usize, value: usize, size: usize },
    #[error("theta has {found} entries, expected one per unit ({expected})")]
    ThetaLength { expected: usize, found: usize },
    #[error("functors do not share domain and codomain")]
    FunctorMismatch,
    #[error("chain maps do not share source and target")]
    ChainMapMismatch,
    #[error("theta has the wrong endpoints at unit {unit}")]
    SimilarityEndpoint { unit: usize },
    #[error("theta is not natural at arrow {arrow}")]
    NotNatural { arrow: usize },
    #[error("coefficients: {0}")]
    InvalidCoefficients(String),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// A bounded chain complex `C_N -> ... -> C_1 -> C_0` of free abelian groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[n]` is `d_n : C_n -> C_(n-1)`; `boundaries[0]` is `0 x rank_0`.
    boundaries: Vec<IntMatrix>,
    labels: Option<Vec<Vec<Vec<usize>>>>,
}

impl ChainComplex {
    /// `boundaries[k]` is `d_(k+1)`. Shapes and `d d = 0` are checked.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, MooreError> {
        assert!(!ranks.is_empty(), "a chain complex needs degree 0");
        if boundaries.len() + 1 != ranks.len() {
            return Err(MooreError::DegreeOutOfRange {
                n: boundaries.len(),
                max: ranks.len() - 1,
            });
        }
        let mut all = vec![IntMatrix::zeros(0, ranks[0])];
        for (k, d) in boundaries.into_iter().enumerate() {
            let n = k + 1;
            if d.rows() != ranks[n - 1] || d.cols() != ranks[n] {
                return Err(MooreError::BoundaryShape {
                    n,
                    rows: d.rows(),
                    cols: d.cols(),
                    expected_rows: ranks[n - 1],
                    expected_cols: ranks[n],
                });
            }
            all.push(d);
        }
        for n in 1..all.len().saturating_sub(1) {
            if !(&all[n] * &all[n + 1]).is_zero() {
                return Err(MooreError::NotAComplex { n });
            }
        }
        Ok(ChainComplex {
            ranks,
            boundaries: all,
            labels: None,
        })
    }

    /// The complex with the given ranks and zero boundaries.
    pub fn zero(ranks: Vec<usize>) -> Self {
        let bs = (1..ranks.len()).map(|n| IntMatrix::zeros(ranks[n - 1], ranks[n])).collect();
        Self::new(ranks, bs).expect("zero complex")
    }

    pub fn with_labels(mut self, labels: Vec<Vec<Vec<usize>>>) -> Self {
        assert_eq!(labels.len(), self.ranks.len());
        self.labels = Some(labels);
        self
    }

    /// Top degree `N`.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }
    /// `d_n`, with `d_0` the `0 x rank_0` matrix.
    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }
    pub fn labels(&self) -> Option<&[Vec<Vec<usize>>]> {
        self.labels.as_deref()
    }

    /// Largest degree whose homology is determined (needs `d_(n+1)`).
    pub fn homology_window(&self) -> usize {
        self.length().saturating_sub(1)
    }

    pub(crate) fn check_homology_degree(&self, n: usize) -> Result<(), MooreError> {
        if n + 1 > self.length() {
            return Err(MooreError::DegreeOutOfRange {
                n,
                max: self.homology_window(),
            });
        }
        Ok(())
    }

    /// Degreewise direct sum; both complexes must have the same length.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        assert_eq!(self.length(), other.length(), "direct sum of complexes of different length");
        let ranks = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let bs = (1..=self.length())
            .map(|n| IntMatrix::block_diag(&[&self.boundaries[n], &other.boundaries[n]]))
            .collect();
        ChainComplex::new(ranks, bs).expect("sum of complexes")
    }

    /// Drops degrees above `n`.
    pub fn truncate(&self, n: usize) -> ChainComplex {
        let n = n.min(self.length());
        ChainComplex {
            ranks: self.ranks[..=n].to_vec(),
            boundaries: self.boundaries[..=n].to_vec(),
            labels: self.labels.as_ref().map(|l| l[..=n].to_vec()),
        }
    }
}

/// Matrix of the fibre-sum pushforward along `map : X -> Y` with
/// `|Y| = target_size`: entry `(y, x)` is 1 iff `map[x] = y`.
pub fn pushforward_matrix(map: &[usize], target_size: usize) -> Result<IntMatrix, MooreError> {
    let mut m = IntMatrix::zeros(target_size, map.len());
    for (x, &y) in map.iter().enumerate() {
        if y >= target_size {
            return Err(MooreError::MapOutOfRange {
                position: x,
                value: y,
                size: target_size,
            });
        }
        m.set(y, x, BigInt::one());
    }
    Ok(m)
}

/// `d_n = sum_i (-1)^i (d_i)_*` on the levels of a nerve.
pub fn moore_complex(nv: &Nerve) -> ChainComplex {
    let ranks = nv.level_sizes();
    let mut bs = Vec::with_capacity(nv.n_max());
    for n in 1..=nv.n_max() {
        let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for i in 0..=n {
            let face = nv.face_map(n, i).expect("built degree");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (x, &y) in face.iter().enumerate() {
                let v = d.get(y, x) + sign;
                d.set(y, x, v);
            }
        }
        bs.push(d);
    }
    let labels = (0..=nv.n_max()).map(|n| nv.level(n).to_vec()).collect();
    ChainComplex::new(ranks, bs)
        .expect("simplicial identities force d d = 0")
        .with_labels(labels)
}
