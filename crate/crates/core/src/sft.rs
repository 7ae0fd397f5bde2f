//! Homology of the groupoids of one-sided shifts of finite type, from the
//! adjacency matrix: `H_0 = coker(1 - A^T)`, `H_1 = ker(1 - A^T)` and zero
//! above.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::abelian::{cokernel_group, direct_sum, FgAbGroup, IntMatrix};
use crate::moore::{CoefficientSpec, HomologyResult};
use crate::sequences::{uct_homology, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SftError {
    #[error("adjacency matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("adjacency matrix is empty")]
    Empty,
    #[error("entry ({row}, {col}) is negative")]
    Negative { row: usize, col: usize },
    #[error("row {0} is zero")]
    ZeroRow(usize),
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// A square nonnegative integer matrix without zero rows or columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpec {
    matrix: IntMatrix,
}

impl SftSpec {
    pub fn new(matrix: IntMatrix) -> Result<Self, SftError> {
        let (r, c) = (matrix.rows(), matrix.cols());
        if r != c {
            return Err(SftError::NotSquare { rows: r, cols: c });
        }
        if r == 0 {
            return Err(SftError::Empty);
        }
        for i in 0..r {
            for j in 0..c {
                if matrix.get(i, j).is_negative() {
                    return Err(SftError::Negative { row: i, col: j });
                }
            }
        }
        if let Some(i) = (0..r).find(|&i| matrix.row(i).iter().all(|x| x.is_zero())) {
            return Err(SftError::ZeroRow(i));
        }
        if let Some(j) = (0..c).find(|&j| (0..r).all(|i| matrix.get(i, j).is_zero())) {
            return Err(SftError::ZeroColumn(j));
        }
        Ok(SftSpec { matrix })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, SftError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// `1 - A^T`.
    pub fn bowen_franks_matrix(&self) -> IntMatrix {
        &IntMatrix::identity(self.size()) - &self.matrix.transpose()
    }

    /// Block-diagonal adjacency matrix of the disjoint union.
    pub fn block_diagonal(parts: &[SftSpec]) -> Result<SftSpec, SftError> {
        let blocks: Vec<&IntMatrix> = parts.iter().map(|p| &p.matrix).collect();
        SftSpec::new(IntMatrix::block_diag(&blocks))
    }
}

/// Integral homology in degrees `0..=max_degree`.
pub fn sft_homology(spec: &SftSpec, max_degree: usize) -> HomologyResult {
    let m = spec.bowen_franks_matrix();
    let h0 = cokernel_group(&m);
    let h1 = FgAbGroup::free(spec.size() - m.rank());
    let groups = (0..=max_degree)
        .map(|n| match n {
            0 => h0.clone(),
            1 => h1.clone(),
            _ => FgAbGroup::trivial(),
        })
        .collect();
    HomologyResult::new(CoefficientSpec::Integers, groups)
}

/// `H_n(G_A; A)` through the universal coefficient splitting.
pub fn sft_homology_with_coefficients(spec: &SftSpec, a: &CoefficientSpec, n: usize) -> Result<FgAbGroup, SftError> {
    Ok(uct_homology(&sft_homology(spec, n), a, n)?.middle)
}

/// Degreewise direct sum over the parts.
pub fn sft_disjoint_union(parts: &[SftSpec], max_degree: usize) -> HomologyResult {
    let per_part: Vec<HomologyResult> = parts.iter().map(|p| sft_homology(p, max_degree)).collect();
    let groups = (0..=max_degree)
        .map(|n| {
            let gs: Vec<FgAbGroup> = per_part.iter().map(|h| h.groups[n].clone()).collect();
            direct_sum(&gs)
        })
        .collect();
    HomologyResult::new(CoefficientSpec::Integers, groups)
}
