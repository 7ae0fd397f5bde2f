//! Smith normal form over the integers.
//!
//! Pivoting always takes the entry of smallest nonzero absolute value in the
//! remaining submatrix. After diagonalization the divisibility chain is
//! restored by unimodular 2x2 gcd/lcm steps on pairs of diagonal entries.

use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::scalar::{self, axpy_sub, mix2, negate, two_rows, Checked};

/// `u * m * v = s`, with `u`, `v` unimodular and `s` diagonal with a
/// nonnegative divisibility chain `d1 | d2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    rank: usize,
    source_dims: (usize, usize),
}

impl SmithForm {
    pub fn s(&self) -> &IntMatrix {
        &self.s
    }
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }
    /// Inverse of `u`, tracked alongside it.
    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }
    pub fn v(&self) -> &IntMatrix {
        &self.v
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn source_dims(&self) -> (usize, usize) {
        self.source_dims
    }

    /// The full diagonal `d1, ..., d_min(rows, cols)` including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Checks every invariant of the decomposition against `m`.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        if (m.rows(), m.cols()) != self.source_dims {
            return false;
        }
        let prod = &(&self.u * m) * &self.v;
        if prod != self.s || !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        if &self.u * &self.u_inv != IntMatrix::identity(self.u.rows()) {
            return false;
        }
        let d = self.diagonal();
        for i in 0..self.s.rows() {
            for j in 0..self.s.cols() {
                if i != j && !num_traits::Zero::is_zero(self.s.get(i, j)) {
                    return false;
                }
            }
        }
        d.iter().all(|x| x.sign() != num_bigint::Sign::Minus)
            && d.windows(2).all(|w| {
                if num_traits::Zero::is_zero(&w[0]) {
                    num_traits::Zero::is_zero(&w[1])
                } else {
                    num_integer::Integer::is_multiple_of(&w[1], &w[0])
                }
            })
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let data = smith_with(m, Track::ALL);
    let (r, c) = (m.rows(), m.cols());
    SmithForm {
        s: IntMatrix::diagonal(r, c, &data.diag),
        u: data.u.expect("tracked"),
        u_inv: data.u_inv.expect("tracked"),
        v: data.v.expect("tracked"),
        rank: data.diag.len(),
        source_dims: (r, c),
    }
}

/// Nonzero invariant factors of `m` (no transforms tracked).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_with(m, Track::NONE).diag
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

impl Track {
    pub const ALL: Track = Track {
        u: true,
        u_inv: true,
        v: true,
    };
    pub const NONE: Track = Track {
        u: false,
        u_inv: false,
        v: false,
    };
    pub const LEFT: Track = Track {
        u: true,
        u_inv: true,
        v: false,
    };
}

/// Raw elimination output. `diag` holds only the nonzero invariant factors.
pub(crate) struct SmithData {
    pub diag: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

pub(crate) fn smith_with(m: &IntMatrix, track: Track) -> SmithData {
    if let Some(rows) = m.to_rows::<i128>() {
        if let Ok(d) = Reducer::new(rows, m.rows(), m.cols(), track).run() {
            return d;
        }
    }
    let rows = m.to_rows::<BigInt>().expect("BigInt conversion is total");
    Reducer::new(rows, m.rows(), m.cols(), track)
        .run()
        .expect("BigInt arithmetic cannot overflow")
}

struct Reducer<T> {
    r: usize,
    c: usize,
    a: Vec<Vec<T>>,
    /// Rows of U.
    u: Option<Vec<Vec<T>>>,
    /// Columns of U^-1.
    u_inv: Option<Vec<Vec<T>>>,
    /// Columns of V.
    v: Option<Vec<Vec<T>>>,
}

fn identity_store<T: scalar::Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            let mut row = vec![T::zero(); n];
            row[i] = T::one();
            row
        })
        .collect()
}

impl<T: scalar::Scalar> Reducer<T> {
    fn new(a: Vec<Vec<T>>, r: usize, c: usize, track: Track) -> Self {
        Reducer {
            r,
            c,
            a,
            u: track.u.then(|| identity_store(r)),
            u_inv: track.u_inv.then(|| identity_store(r)),
            v: track.v.then(|| identity_store(c)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(w) = &mut self.u_inv {
            w.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            v.swap(i, j);
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Checked<()> {
        let (ri, rt) = two_rows(&mut self.a, i, t);
        axpy_sub(ri, rt, q)?;
        if let Some(u) = &mut self.u {
            let (ui, ut) = two_rows(u, i, t);
            axpy_sub(ui, ut, q)?;
        }
        if let Some(w) = &mut self.u_inv {
            // U^-1 <- U^-1 (I + q e_i e_t^T): column t += q * column i.
            let (wt, wi) = two_rows(w, t, i);
            axpy_sub(wt, wi, &q.neg()?)?;
        }
        Ok(())
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Checked<()> {
        if q.is_zero() {
            return Ok(());
        }
        for row in &mut self.a {
            if !row[t].is_zero() {
                row[j] = row[j].sub(&q.mul(&row[t])?)?;
            }
        }
        if let Some(v) = &mut self.v {
            let (vj, vt) = two_rows(v, j, t);
            axpy_sub(vj, vt, q)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, t: usize) -> Checked<()> {
        negate(&mut self.a[t])?;
        if let Some(u) = &mut self.u {
            negate(&mut u[t])?;
        }
        if let Some(w) = &mut self.u_inv {
            negate(&mut w[t])?;
        }
        Ok(())
    }

    /// rows (i, j) <- [[p, q], [r, s]] (rows i, j); the 2x2 block must have
    /// determinant 1.
    fn row_mix(&mut self, i: usize, j: usize, [p, q, r, s]: [&T; 4]) -> Checked<()> {
        let (ri, rj) = two_rows(&mut self.a, i, j);
        mix2(ri, rj, [p, q, r, s])?;
        if let Some(u) = &mut self.u {
            let (ui, uj) = two_rows(u, i, j);
            mix2(ui, uj, [p, q, r, s])?;
        }
        if let Some(w) = &mut self.u_inv {
            let (wi, wj) = two_rows(w, i, j);
            mix2(wi, wj, [s, &r.neg()?, &q.neg()?, p])?;
        }
        Ok(())
    }

    /// cols (i, j) <- (p*col_i + q*col_j, r*col_i + s*col_j)
    fn col_mix(&mut self, i: usize, j: usize, [p, q, r, s]: [&T; 4]) -> Checked<()> {
        for row in &mut self.a {
            let (x, y) = (row[i].clone(), row[j].clone());
            if x.is_zero() && y.is_zero() {
                continue;
            }
            row[i] = p.mul(&x)?.add(&q.mul(&y)?)?;
            row[j] = r.mul(&x)?.add(&s.mul(&y)?)?;
        }
        if let Some(v) = &mut self.v {
            let (vi, vj) = two_rows(v, i, j);
            mix2(vi, vj, [p, q, r, s])?;
        }
        Ok(())
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.r {
            for j in t..self.c {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if x.abs_cmp(&self.a[bi][bj]).is_ge() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(mut self) -> Checked<SmithData> {
        let n = self.r.min(self.c);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.r {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t])?;
                        self.row_sub(i, t, &q)?;
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.c {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t])?;
                        self.col_sub(j, t, &q)?;
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if !dirty {
                    break;
                }
                // A remainder smaller than the pivot survived; move the
                // smallest entry of the pivot cross onto the diagonal.
                let mut best = (t, t);
                for i in t + 1..self.r {
                    let x = &self.a[i][t];
                    if !x.is_zero() && x.abs_cmp(&self.a[best.0][best.1]).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t + 1..self.c {
                    let x = &self.a[t][j];
                    if !x.is_zero() && x.abs_cmp(&self.a[best.0][best.1]).is_lt() {
                        best = (t, j);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        let rank = t;
        for i in 0..rank {
            for j in i + 1..rank {
                let (di, dj) = (self.a[i][i].clone(), self.a[j][j].clone());
                if di.divides(&dj)? {
                    continue;
                }
                let (g, s, tt) = T::ext_gcd(&di, &dj)?;
                let dj_g = dj.div_floor(&g)?;
                let di_g = di.div_floor(&g)?;
                self.row_mix(i, j, [&s, &tt, &dj_g.neg()?, &di_g])?;
                let one = T::one();
                let r01 = tt.mul(&dj_g)?.neg()?;
                let r11 = s.mul(&di_g)?;
                self.col_mix(i, j, [&one, &one, &r01, &r11])?;
                debug_assert_eq!(self.a[i][i], g);
            }
        }
        let diag = (0..rank).map(|i| self.a[i][i].to_big()).collect();
        let (r, c) = (self.r, self.c);
        Ok(SmithData {
            diag,
            u: self.u.map(|u| IntMatrix::from_row_store(r, r, &u)),
            u_inv: self.u_inv.map(|w| IntMatrix::from_column_store(r, r, &w)),
            v: self.v.map(|v| IntMatrix::from_column_store(c, c, &v)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::int_vec;

    #[test]
    fn worked_reduction_diag_one_two() {
        let m = IntMatrix::from_rows(&[[-1, -1], [-1, 1]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.diagonal(), int_vec(&[1, 2]));
        assert!(f.verify(&m));
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(3);
        let f = smith_normal_form(&id);
        assert_eq!(f.diagonal(), int_vec(&[1, 1, 1]));
        assert!(f.verify(&id));

        let z = IntMatrix::zeros(2, 3);
        let f = smith_normal_form(&z);
        assert_eq!(f.diagonal(), int_vec(&[0, 0]));
        assert!(f.verify(&z));
    }

    #[test]
    fn divisibility_repair() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.diagonal(), int_vec(&[1, 6]));
        assert!(f.verify(&m));

        let m = IntMatrix::from_rows(&[[4, 0, 0], [0, 6, 0], [0, 0, 10]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.diagonal(), int_vec(&[2, 2, 60]));
        assert!(f.verify(&m));
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let m = IntMatrix::zeros(r, c);
            let f = smith_normal_form(&m);
            assert!(f.verify(&m));
            assert_eq!(f.rank(), 0);
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let m = IntMatrix::from_vec(
            2,
            2,
            vec![big.clone(), BigInt::from(3), BigInt::from(7), &big * &big + 1],
        );
        let f = smith_normal_form(&m);
        assert!(f.verify(&m));
    }
}
