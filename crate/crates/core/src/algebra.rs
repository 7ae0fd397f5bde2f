//! Convolution on integer-valued functions of a finite groupoid and the
//! pointwise pairing of integer functions with coefficient functions.
//!
//! Every function on a finite groupoid is compactly supported, so no
//! support bookkeeping is needed.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::groupoid::FiniteGroupoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("functions live on different groupoids")]
    GroupoidMismatch,
    #[error("coefficient value {position} has {found} coordinates, expected {expected}")]
    ElementShape { position: usize, expected: usize, found: usize },
    #[error("map sends position {position} to {value}, outside 0..{size}")]
    MapOutOfRange { position: usize, value: usize, size: usize },
    #[error("coefficient functions take values in different groups")]
    GroupMismatch,
}

/// An integer-valued function on the arrows of a groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidFunction {
    groupoid: FiniteGroupoid,
    values: Vec<BigInt>,
}

impl GroupoidFunction {
    pub fn new(groupoid: &FiniteGroupoid, values: Vec<BigInt>) -> Result<Self, AlgebraError> {
        if values.len() != groupoid.arrow_count() {
            return Err(AlgebraError::LengthMismatch {
                expected: groupoid.arrow_count(),
                found: values.len(),
            });
        }
        Ok(GroupoidFunction {
            groupoid: groupoid.clone(),
            values,
        })
    }

    pub fn from_i64(groupoid: &FiniteGroupoid, values: &[i64]) -> Result<Self, AlgebraError> {
        Self::new(groupoid, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(groupoid: &FiniteGroupoid) -> Self {
        GroupoidFunction {
            groupoid: groupoid.clone(),
            values: vec![BigInt::zero(); groupoid.arrow_count()],
        }
    }

    /// Indicator of a set of arrows.
    pub fn characteristic(groupoid: &FiniteGroupoid, arrows: &[usize]) -> Self {
        let mut f = Self::zero(groupoid);
        for &a in arrows {
            f.values[a] = BigInt::from(1);
        }
        f
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
    pub fn get(&self, a: usize) -> &BigInt {
        &self.values[a]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&a| !self.values[a].is_zero()).collect()
    }

    pub fn add(&self, other: &GroupoidFunction) -> Result<GroupoidFunction, AlgebraError> {
        if self.groupoid != other.groupoid {
            return Err(AlgebraError::GroupoidMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(GroupoidFunction {
            groupoid: self.groupoid.clone(),
            values,
        })
    }

    pub fn scale(&self, k: &BigInt) -> GroupoidFunction {
        GroupoidFunction {
            groupoid: self.groupoid.clone(),
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }
}

/// `(f1 * f2)(c) = sum over h with s(h) = r(c) of f1(h^-1) f2(h c)`.
pub fn convolve(
    g: &FiniteGroupoid,
    f1: &GroupoidFunction,
    f2: &GroupoidFunction,
) -> Result<GroupoidFunction, AlgebraError> {
    if &f1.groupoid != g || &f2.groupoid != g {
        return Err(AlgebraError::GroupoidMismatch);
    }
    let mut by_source = vec![Vec::new(); g.unit_count()];
    for a in 0..g.arrow_count() {
        by_source[g.unit_position(g.source(a)).expect("unit")].push(a);
    }
    let values = (0..g.arrow_count())
        .map(|c| {
            let mut acc = BigInt::zero();
            for &h in &by_source[g.unit_position(g.range(c)).expect("unit")] {
                let x = &f1.values[g.inverse(h)];
                if x.is_zero() {
                    continue;
                }
                let hc = g.compose(h, c).expect("s(h) = r(c)");
                let y = &f2.values[hc];
                if !y.is_zero() {
                    acc += x * y;
                }
            }
            acc
        })
        .collect();
    Ok(GroupoidFunction {
        groupoid: g.clone(),
        values,
    })
}

/// Indicator of the unit space; a two-sided identity for [`convolve`].
pub fn local_unit(g: &FiniteGroupoid) -> GroupoidFunction {
    GroupoidFunction::characteristic(g, g.units())
}

/// A function on an index set with values in a finitely generated abelian
/// group, stored as canonical coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientFunction {
    group: FgAbGroup,
    values: Vec<Vec<BigInt>>,
}

impl CoefficientFunction {
    pub fn new(group: &FgAbGroup, values: Vec<Vec<BigInt>>) -> Result<Self, AlgebraError> {
        let k = group.num_generators();
        let mut values = values;
        for (position, v) in values.iter_mut().enumerate() {
            if v.len() != k {
                return Err(AlgebraError::ElementShape {
                    position,
                    expected: k,
                    found: v.len(),
                });
            }
            group.reduce_element(v);
        }
        Ok(CoefficientFunction {
            group: group.clone(),
            values,
        })
    }

    pub fn constant(group: &FgAbGroup, len: usize, a: &[BigInt]) -> Result<Self, AlgebraError> {
        Self::new(group, vec![a.to_vec(); len])
    }

    pub fn zero(group: &FgAbGroup, len: usize) -> Self {
        CoefficientFunction {
            group: group.clone(),
            values: vec![group.zero_element(); len],
        }
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }
    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &CoefficientFunction) -> Result<CoefficientFunction, AlgebraError> {
        if self.group != other.group {
            return Err(AlgebraError::GroupMismatch);
        }
        if self.len() != other.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.group.add_elements(a, b))
            .collect();
        Ok(CoefficientFunction {
            group: self.group.clone(),
            values,
        })
    }

    /// `zeta . pi`, for `pi : X -> (index set of self)`.
    pub fn pull_back(&self, pi: &[usize]) -> Result<CoefficientFunction, AlgebraError> {
        check_map(pi, self.len())?;
        Ok(CoefficientFunction {
            group: self.group.clone(),
            values: pi.iter().map(|&y| self.values[y].clone()).collect(),
        })
    }

    /// Fibre sums along `pi : (index set of self) -> 0..target_size`.
    pub fn push_forward(&self, pi: &[usize], target_size: usize) -> Result<CoefficientFunction, AlgebraError> {
        if pi.len() != self.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: self.len(),
                found: pi.len(),
            });
        }
        check_map(pi, target_size)?;
        let mut out = Self::zero(&self.group, target_size);
        for (x, &y) in pi.iter().enumerate() {
            out.values[y] = self.group.add_elements(&out.values[y], &self.values[x]);
        }
        Ok(out)
    }

    /// Number of distinct values taken.
    pub fn distinct_values(&self) -> usize {
        let set: std::collections::BTreeSet<&Vec<BigInt>> = self.values.iter().collect();
        set.len()
    }
}

fn check_map(pi: &[usize], size: usize) -> Result<(), AlgebraError> {
    for (position, &value) in pi.iter().enumerate() {
        if value >= size {
            return Err(AlgebraError::MapOutOfRange { position, value, size });
        }
    }
    Ok(())
}

/// Integer pushforward `pi_*(f)(y) = sum of f over the fibre of y`.
pub fn push_forward_integers(f: &[BigInt], pi: &[usize], target_size: usize) -> Result<Vec<BigInt>, AlgebraError> {
    if pi.len() != f.len() {
        return Err(AlgebraError::LengthMismatch {
            expected: f.len(),
            found: pi.len(),
        });
    }
    check_map(pi, target_size)?;
    let mut out = vec![BigInt::zero(); target_size];
    for (x, &y) in pi.iter().enumerate() {
        out[y] += &f[x];
    }
    Ok(out)
}

/// Pointwise `(f . zeta)(x) = f(x) zeta(x)`.
pub fn scalar_pair(f: &[BigInt], zeta: &CoefficientFunction) -> Result<CoefficientFunction, AlgebraError> {
    if f.len() != zeta.len() {
        return Err(AlgebraError::LengthMismatch {
            expected: zeta.len(),
            found: f.len(),
        });
    }
    let values = f
        .iter()
        .zip(&zeta.values)
        .map(|(k, a)| zeta.group.scale_element(k, a))
        .collect();
    Ok(CoefficientFunction {
        group: zeta.group.clone(),
        values,
    })
}

/// Both sides of `pi_*(f) . zeta = pi_*(f . (zeta . pi))`.
pub fn pairing_pushforward_sides(
    f: &[BigInt],
    pi: &[usize],
    zeta: &CoefficientFunction,
) -> Result<(CoefficientFunction, CoefficientFunction), AlgebraError> {
    let lhs = scalar_pair(&push_forward_integers(f, pi, zeta.len())?, zeta)?;
    let rhs = scalar_pair(f, &zeta.pull_back(pi)?)?.push_forward(pi, zeta.len())?;
    Ok((lhs, rhs))
}

/// The comparison map `sum f_i (x) a_i -> sum a_i f_i` from
/// `Cc(X, Z) (x) A` to `A`-valued functions.
pub fn tensor_comparison(
    group: &FgAbGroup,
    len: usize,
    terms: &[(Vec<BigInt>, Vec<BigInt>)],
) -> Result<CoefficientFunction, AlgebraError> {
    let mut out = CoefficientFunction::zero(group, len);
    for (f, a) in terms {
        let zeta = CoefficientFunction::constant(group, len, a)?;
        out = out.add(&scalar_pair(f, &zeta)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::int_vec;

    #[test]
    fn matrix_units() {
        let g = FiniteGroupoid::pair(2);
        // (0,1) has index 1, (1,0) index 2, (0,0) index 0.
        let e01 = GroupoidFunction::characteristic(&g, &[1]);
        let e10 = GroupoidFunction::characteristic(&g, &[2]);
        assert_eq!(convolve(&g, &e01, &e10).unwrap(), GroupoidFunction::characteristic(&g, &[0]));
        let zero = GroupoidFunction::zero(&g);
        assert_eq!(convolve(&g, &e01, &zero).unwrap(), zero);
    }

    #[test]
    fn group_ring() {
        let g = FiniteGroupoid::cyclic_group(2);
        let t = GroupoidFunction::characteristic(&g, &[1]);
        assert_eq!(convolve(&g, &t, &t).unwrap(), local_unit(&g));
        assert_eq!(local_unit(&g), GroupoidFunction::characteristic(&g, &[0]));
    }

    #[test]
    fn unit_laws() {
        let g = FiniteGroupoid::pair(2);
        let e = local_unit(&g);
        let f = GroupoidFunction::from_i64(&g, &[3, -1, 4, 2]).unwrap();
        assert_eq!(convolve(&g, &e, &f).unwrap(), f);
        assert_eq!(convolve(&g, &f, &e).unwrap(), f);
        assert_eq!(convolve(&g, &e, &e).unwrap(), e);
        let empty = FiniteGroupoid::empty();
        assert!(local_unit(&empty).values().is_empty());
    }

    #[test]
    fn mismatches() {
        let g = FiniteGroupoid::pair(2);
        let h = FiniteGroupoid::cyclic_group(4);
        assert!(matches!(
            convolve(&g, &local_unit(&g), &local_unit(&h)),
            Err(AlgebraError::GroupoidMismatch)
        ));
        assert!(matches!(
            GroupoidFunction::from_i64(&g, &[1]),
            Err(AlgebraError::LengthMismatch { expected: 4, found: 1 })
        ));
    }

    #[test]
    fn pairing_examples() {
        let z5 = FgAbGroup::cyclic(5);
        let zeta = CoefficientFunction::constant(&z5, 3, &int_vec(&[3])).unwrap();
        let f = int_vec(&[2, 0, 2]);
        let p = scalar_pair(&f, &zeta).unwrap();
        assert_eq!(p.values(), &[int_vec(&[1]), int_vec(&[0]), int_vec(&[1])]);
        let z = scalar_pair(&int_vec(&[0, 0, 0]), &zeta).unwrap();
        assert_eq!(z, CoefficientFunction::zero(&z5, 3));

        let zeta = CoefficientFunction::new(&z5, vec![int_vec(&[1]), int_vec(&[4])]).unwrap();
        let (lhs, rhs) = pairing_pushforward_sides(&int_vec(&[1, 2, 3]), &[0, 1, 0], &zeta).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn comparison_image() {
        let z4 = FgAbGroup::cyclic(4);
        let chi = int_vec(&[1, 0, 1, 0]);
        let phi = tensor_comparison(&z4, 4, &[(chi, int_vec(&[3]))]).unwrap();
        assert_eq!(phi.distinct_values(), 2);
    }
}
