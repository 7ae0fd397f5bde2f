//! Column-style Hermite normal form, integer kernels and exact solving.

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::scalar::{self, axpy_sub, mix2, negate, two_rows, Checked};
use super::AbelianError;

/// `m * u = h` with `u` unimodular and `h` in column echelon form.
///
/// Column `k < rank` of `h` has its leading (topmost) nonzero entry at row
/// `pivot_rows[k]`, these rows strictly increase, every pivot is positive and
/// the entries of earlier columns in a pivot row lie in `[0, pivot)`.
/// Columns `rank..` of `h` vanish, so the matching columns of `u` form a
/// lattice basis of the integer kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    h: IntMatrix,
    u: IntMatrix,
    u_inv: Option<IntMatrix>,
    pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn new(m: &IntMatrix) -> Self {
        hermite_with(m, true)
    }

    pub fn h(&self) -> &IntMatrix {
        &self.h
    }
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }
    pub fn u_inverse(&self) -> Option<&IntMatrix> {
        self.u_inv.as_ref()
    }
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
    /// Row index of the pivot of each nonzero column of `h`.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }
    /// Pivot columns of `h`; always `0..rank`.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.rank()).collect()
    }

    /// Kernel basis: the trailing `cols - rank` columns of `u`.
    pub fn kernel(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.rank()..self.u.cols()).collect();
        self.u.select_cols(&idx)
    }

    /// Coefficients `y` with `h * y = b`, or `None` when `b` is outside the
    /// column lattice. Entries of `y` past the rank are zero.
    pub fn solve_echelon(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut res = b.to_vec();
        let mut y = vec![BigInt::zero(); self.h.cols()];
        for (k, &p) in self.pivot_rows.iter().enumerate() {
            // Rows above p are already cleared by earlier pivots.
            let piv = self.h.get(p, k);
            let (q, r) = num_integer::Integer::div_rem(&res[p], piv);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in p..self.h.rows() {
                    let e = self.h.get(i, k);
                    if !e.is_zero() {
                        res[i] -= &q * e;
                    }
                }
            }
            y[k] = q;
        }
        res.iter().all(Zero::is_zero).then_some(y)
    }

    /// Deterministic solution of `m * x = b` for the source matrix `m`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.h.rows());
        self.solve_echelon(b).map(|y| self.u.mul_vec(&y))
    }
}

/// Returns `x` with `m * x = b` when `b` lies in the column lattice of `m`.
/// The solution is the Hermite-reduced one: coordinates along the kernel
/// directions of the transform are zero.
pub fn hermite_solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, AbelianError> {
    if b.len() != m.rows() {
        return Err(AbelianError::DimensionMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    Ok(hermite_with(m, false).solve(b))
}

/// Lattice basis (as columns) of `{x : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    hermite_with(m, false).kernel()
}

pub(crate) fn hermite_with(m: &IntMatrix, track_inverse: bool) -> HermiteForm {
    if let Some(cols) = m.to_columns::<i128>() {
        if let Ok(h) = ColumnReducer::new(cols, m.rows(), track_inverse).run() {
            return h;
        }
    }
    let cols = m.to_columns::<BigInt>().expect("total");
    ColumnReducer::new(cols, m.rows(), track_inverse)
        .run()
        .expect("BigInt arithmetic cannot overflow")
}

struct ColumnReducer<T> {
    rows: usize,
    /// Columns of the working matrix.
    h: Vec<Vec<T>>,
    /// Columns of U.
    u: Vec<Vec<T>>,
    /// Rows of U^-1.
    u_inv: Option<Vec<Vec<T>>>,
}

impl<T: scalar::Scalar> ColumnReducer<T> {
    fn new(h: Vec<Vec<T>>, rows: usize, track_inverse: bool) -> Self {
        let n = h.len();
        let ident = || -> Vec<Vec<T>> {
            (0..n)
                .map(|i| {
                    let mut c = vec![T::zero(); n];
                    c[i] = T::one();
                    c
                })
                .collect()
        };
        ColumnReducer {
            rows,
            u: ident(),
            u_inv: track_inverse.then(ident),
            h,
        }
    }

    /// col_j -= q col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &T) -> Checked<()> {
        let (hj, hk) = two_rows(&mut self.h, j, k);
        axpy_sub(hj, hk, q)?;
        let (uj, uk) = two_rows(&mut self.u, j, k);
        axpy_sub(uj, uk, q)?;
        if let Some(w) = &mut self.u_inv {
            // U^-1 <- (I + q e_k e_j^T) U^-1: row k += q row j.
            let (wk, wj) = two_rows(w, k, j);
            axpy_sub(wk, wj, &q.neg()?)?;
        }
        Ok(())
    }

    fn run(mut self) -> Checked<HermiteForm> {
        let n = self.h.len();
        let mut pc = 0;
        let mut pivot_rows = Vec::new();
        for row in 0..self.rows {
            if pc == n {
                break;
            }
            for j in pc + 1..n {
                if self.h[j][row].is_zero() {
                    continue;
                }
                let a = self.h[pc][row].clone();
                let b = self.h[j][row].clone();
                let (g, s, t) = T::ext_gcd(&a, &b)?;
                let bg = b.div_floor(&g)?;
                let ag = a.div_floor(&g)?;
                // new pc = s*pc + t*j, new j = -(b/g)*pc + (a/g)*j; det 1.
                let nbg = bg.neg()?;
                {
                    let (hp, hj) = two_rows(&mut self.h, pc, j);
                    mix2(hp, hj, [&s, &t, &nbg, &ag])?;
                    let (up, uj) = two_rows(&mut self.u, pc, j);
                    mix2(up, uj, [&s, &t, &nbg, &ag])?;
                }
                if let Some(w) = &mut self.u_inv {
                    // Inverse block [[a/g, b/g], [-t, s]] acting on rows.
                    let nt = t.neg()?;
                    let (wp, wj) = two_rows(w, pc, j);
                    mix2(wp, wj, [&ag, &bg, &nt, &s])?;
                }
            }
            if self.h[pc][row].is_zero() {
                continue;
            }
            if self.h[pc][row].is_negative() {
                negate(&mut self.h[pc])?;
                negate(&mut self.u[pc])?;
                if let Some(w) = &mut self.u_inv {
                    negate(&mut w[pc])?;
                }
            }
            let piv = self.h[pc][row].clone();
            for k in 0..pc {
                let q = self.h[k][row].div_floor(&piv)?;
                self.col_sub(k, pc, &q)?;
            }
            pivot_rows.push(row);
            pc += 1;
        }
        let rows = self.rows;
        Ok(HermiteForm {
            h: IntMatrix::from_column_store(rows, n, &self.h),
            u: IntMatrix::from_column_store(n, n, &self.u),
            u_inv: self.u_inv.map(|w| IntMatrix::from_row_store(n, n, &w)),
            pivot_rows,
        })
    }
}
