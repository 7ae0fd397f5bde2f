use std::fmt;

use super::{FiniteGroupoid, GroupoidError};

/// A functor between finite groupoids. `unit_map[k]` is the image of the
/// `k`-th unit of the domain (an arrow of the codomain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleFunctor {
    domain: FiniteGroupoid,
    codomain: FiniteGroupoid,
    arrow_map: Vec<usize>,
    unit_map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorAxiom {
    F1,
    F2,
    F3,
}

impl fmt::Display for FunctorAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FunctorAxiom::F1 => "(F1)",
            FunctorAxiom::F2 => "(F2)",
            FunctorAxiom::F3 => "(F3)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorViolation {
    pub axiom: FunctorAxiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl FunctorReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FunctorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

impl EtaleFunctor {
    /// Structural checks only; see [`validate_functor`].
    pub fn from_parts(
        domain: FiniteGroupoid,
        codomain: FiniteGroupoid,
        arrow_map: Vec<usize>,
        unit_map: Vec<usize>,
    ) -> Result<Self, GroupoidError> {
        if arrow_map.len() != domain.arrow_count() {
            return Err(GroupoidError::LengthMismatch {
                what: "arrow map",
                expected: domain.arrow_count(),
                found: arrow_map.len(),
            });
        }
        if unit_map.len() != domain.unit_count() {
            return Err(GroupoidError::LengthMismatch {
                what: "unit map",
                expected: domain.unit_count(),
                found: unit_map.len(),
            });
        }
        for (what, v) in [("arrow map", &arrow_map), ("unit map", &unit_map)] {
            if let Some((position, &value)) = v.iter().enumerate().find(|(_, &x)| x >= codomain.arrow_count()) {
                return Err(GroupoidError::IndexOutOfRange { what, position, value });
            }
        }
        Ok(EtaleFunctor {
            domain,
            codomain,
            arrow_map,
            unit_map,
        })
    }

    /// Functor determined by its arrow map; the unit map is its restriction.
    /// Fails unless (F1)-(F3) hold.
    pub fn new(domain: FiniteGroupoid, codomain: FiniteGroupoid, arrow_map: Vec<usize>) -> Result<Self, GroupoidError> {
        let unit_map = domain
            .units()
            .iter()
            .map(|&x| arrow_map.get(x).copied().unwrap_or(usize::MAX))
            .collect();
        let f = Self::from_parts(domain, codomain, arrow_map, unit_map)?;
        let report = validate_functor(&f);
        if report.is_empty() {
            Ok(f)
        } else {
            Err(GroupoidError::InvalidFunctor(report))
        }
    }

    pub fn identity(g: &FiniteGroupoid) -> Self {
        Self::new(g.clone(), g.clone(), (0..g.arrow_count()).collect()).expect("identity functor")
    }

    pub fn domain(&self) -> &FiniteGroupoid {
        &self.domain
    }
    pub fn codomain(&self) -> &FiniteGroupoid {
        &self.codomain
    }
    pub fn arrow_map(&self) -> &[usize] {
        &self.arrow_map
    }
    pub fn unit_map(&self) -> &[usize] {
        &self.unit_map
    }
    pub fn apply(&self, a: usize) -> usize {
        self.arrow_map[a]
    }

    /// `other . self`.
    pub fn then(&self, other: &EtaleFunctor) -> Result<EtaleFunctor, GroupoidError> {
        if self.codomain != other.domain {
            return Err(GroupoidError::NotASubgroupoid(
                "codomain of the first functor differs from the domain of the second".into(),
            ));
        }
        let arrow_map = self.arrow_map.iter().map(|&a| other.arrow_map[a]).collect();
        EtaleFunctor::new(self.domain.clone(), other.codomain.clone(), arrow_map)
    }
}

/// Checks (F1)-(F3) with witnesses.
pub fn validate_functor(f: &EtaleFunctor) -> FunctorReport {
    let (g, h) = (&f.domain, &f.codomain);
    let mut v = Vec::new();
    let unit_image = |x: usize| f.unit_map[g.unit_position(x).expect("unit")];
    for (k, &x) in g.units().iter().enumerate() {
        if !h.is_unit(f.unit_map[k]) || f.arrow_map[x] != f.unit_map[k] {
            v.push(FunctorViolation {
                axiom: FunctorAxiom::F1,
                witness: vec![x],
            });
        }
    }
    for a in 0..g.arrow_count() {
        let fa = f.arrow_map[a];
        if h.range(fa) != unit_image(g.range(a)) || h.source(fa) != unit_image(g.source(a)) {
            v.push(FunctorViolation {
                axiom: FunctorAxiom::F2,
                witness: vec![a],
            });
        }
    }
    for (&(a, b), &c) in g.composition_table() {
        if h.compose(f.arrow_map[a], f.arrow_map[b]) != Some(f.arrow_map[c]) {
            v.push(FunctorViolation {
                axiom: FunctorAxiom::F3,
                witness: vec![a, b],
            });
        }
    }
    FunctorReport { violations: v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_inclusion() {
        let z4 = FiniteGroupoid::cyclic_group(4);
        assert!(validate_functor(&EtaleFunctor::identity(&z4)).is_empty());
        let z2 = FiniteGroupoid::cyclic_group(2);
        let inc = EtaleFunctor::new(z2, z4, vec![0, 2]).unwrap();
        assert!(validate_functor(&inc).is_empty());
    }

    #[test]
    fn broken_composition_is_f3() {
        let z2 = FiniteGroupoid::cyclic_group(2);
        let z4 = FiniteGroupoid::cyclic_group(4);
        let bad = EtaleFunctor::from_parts(z2, z4, vec![0, 1], vec![0]).unwrap();
        let report = validate_functor(&bad);
        assert_eq!(
            report.violations,
            vec![FunctorViolation {
                axiom: FunctorAxiom::F3,
                witness: vec![1, 1]
            }]
        );
        assert!(matches!(
            EtaleFunctor::new(bad.domain().clone(), bad.codomain().clone(), vec![0, 1]),
            Err(GroupoidError::InvalidFunctor(_))
        ));
    }

    #[test]
    fn composite() {
        let z2 = FiniteGroupoid::cyclic_group(2);
        let z4 = FiniteGroupoid::cyclic_group(4);
        let inc = EtaleFunctor::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        let id = EtaleFunctor::identity(&z4);
        assert_eq!(inc.then(&id).unwrap(), inc);
        let z8 = FiniteGroupoid::cyclic_group(8);
        let dbl = EtaleFunctor::new(z4, z8, vec![0, 2, 4, 6]).unwrap();
        assert_eq!(inc.then(&dbl).unwrap().arrow_map(), &[0, 4]);
    }
}
