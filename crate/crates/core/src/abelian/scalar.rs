//! Entry types for the elimination kernels.
//!
//! Every reduction routine is written once against [`Scalar`] and run first
//! with checked `i128` arithmetic. If any intermediate value overflows the
//! routine reports [`Overflow`] and the caller reruns it over `BigInt`, so
//! results are always exact.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Checked<T> = Result<T, Overflow>;

pub(crate) trait Scalar: Clone + Debug + PartialEq + Eq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn add(&self, o: &Self) -> Checked<Self>;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn mul(&self, o: &Self) -> Checked<Self>;
    fn neg(&self) -> Checked<Self>;
    /// Floor division; `o` must be nonzero.
    fn div_floor(&self, o: &Self) -> Checked<Self>;
    fn is_negative(&self) -> bool;
    fn abs_cmp(&self, o: &Self) -> Ordering;
    fn is_unit(&self) -> bool;

    fn divides(&self, o: &Self) -> Checked<bool> {
        if self.is_zero() {
            return Ok(o.is_zero());
        }
        let q = o.div_floor(self)?;
        Ok(q.mul(self)? == *o)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
    fn ext_gcd(a: &Self, b: &Self) -> Checked<(Self, Self, Self)> {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Self::one(), Self::zero());
        let (mut old_t, mut t) = (Self::zero(), Self::one());
        while !r.is_zero() {
            let q = old_r.div_floor(&r)?;
            let nr = old_r.sub(&q.mul(&r)?)?;
            old_r = std::mem::replace(&mut r, nr);
            let ns = old_s.sub(&q.mul(&s)?)?;
            old_s = std::mem::replace(&mut s, ns);
            let nt = old_t.sub(&q.mul(&t)?)?;
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            Ok((old_r.neg()?, old_s.neg()?, old_t.neg()?))
        } else {
            Ok((old_r, old_s, old_t))
        }
    }
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        // Keep headroom so that a single product of two stored entries
        // cannot be the first thing to overflow silently.
        let x = v.to_i128()?;
        (x.unsigned_abs() < (1u128 << 100)).then_some(x)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn div_floor(&self, o: &Self) -> Checked<Self> {
        if *self == i128::MIN && *o == -1 {
            return Err(Overflow);
        }
        Ok(Integer::div_floor(self, o))
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn div_floor(&self, o: &Self) -> Checked<Self> {
        Ok(Integer::div_floor(self, o))
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.magnitude().cmp(o.magnitude())
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
}

/// `dst -= q * src`, skipping zero entries of `src`.
pub(crate) fn axpy_sub<T: Scalar>(dst: &mut [T], src: &[T], q: &T) -> Checked<()> {
    if q.is_zero() {
        return Ok(());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.sub(&q.mul(s)?)?;
        }
    }
    Ok(())
}

/// Replaces `(x, y)` by `(p*x + q*y, r*x + s*y)` entrywise.
pub(crate) fn mix2<T: Scalar>(
    x: &mut [T],
    y: &mut [T],
    [p, q, r, s]: [&T; 4],
) -> Checked<()> {
    for (a, b) in x.iter_mut().zip(y.iter_mut()) {
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let na = p.mul(a)?.add(&q.mul(b)?)?;
        let nb = r.mul(a)?.add(&s.mul(b)?)?;
        *a = na;
        *b = nb;
    }
    Ok(())
}

pub(crate) fn negate<T: Scalar>(x: &mut [T]) -> Checked<()> {
    for a in x.iter_mut() {
        if !a.is_zero() {
            *a = a.neg()?;
        }
    }
    Ok(())
}

/// Borrows two distinct rows of a row store mutably.
pub(crate) fn two_rows<T>(v: &mut [Vec<T>], i: usize, j: usize) -> (&mut Vec<T>, &mut Vec<T>) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &mut a[j])
    }
}
