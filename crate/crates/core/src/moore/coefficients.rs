use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::MooreError;
use crate::abelian::FgAbGroup;

/// The constant coefficient group `A` of a homology computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefficientSpec {
    Integers,
    /// `Z/m`, `m >= 2`.
    Mod(u64),
    Group(FgAbGroup),
}

impl CoefficientSpec {
    pub fn modulo(m: u64) -> Result<Self, MooreError> {
        if m < 2 {
            return Err(MooreError::InvalidCoefficients(format!("modulus {m} must be at least 2")));
        }
        Ok(CoefficientSpec::Mod(m))
    }

    pub fn group(&self) -> FgAbGroup {
        match self {
            CoefficientSpec::Integers => FgAbGroup::free(1),
            CoefficientSpec::Mod(m) => FgAbGroup::cyclic(*m),
            CoefficientSpec::Group(g) => g.clone(),
        }
    }

    /// `p` when the coefficients are the prime field `Z/p`.
    pub fn prime_field(&self) -> Option<u64> {
        self.group().as_prime_field()
    }

    pub fn is_integers(&self) -> bool {
        self.group() == FgAbGroup::free(1)
    }

    pub(crate) fn validate(&self) -> Result<(), MooreError> {
        if let CoefficientSpec::Mod(m) = self {
            if *m < 2 {
                return Err(MooreError::InvalidCoefficients(format!("modulus {m} must be at least 2")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSpec::Integers => write!(f, "Z"),
            CoefficientSpec::Mod(m) => write!(f, "Z/{m}"),
            CoefficientSpec::Group(g) => {
                let t: Vec<String> = g.torsion().iter().map(ToString::to_string).collect();
                write!(f, "FG:{}", t.join(","))?;
                if g.free_rank() > 0 {
                    write!(f, "+r{}", g.free_rank())?;
                }
                Ok(())
            }
        }
    }
}

/// Accepts `Z`, `Z/m` and `FG:d1,d2,...[+rK]`.
impl FromStr for CoefficientSpec {
    type Err = MooreError;

    fn from_str(s: &str) -> Result<Self, MooreError> {
        let s = s.trim();
        let bad = |why: &str| MooreError::InvalidCoefficients(format!("cannot parse {s:?}: {why}"));
        if s == "Z" {
            return Ok(CoefficientSpec::Integers);
        }
        if let Some(m) = s.strip_prefix("Z/") {
            let m: u64 = m.parse().map_err(|_| bad("modulus is not a number"))?;
            return CoefficientSpec::modulo(m);
        }
        if let Some(body) = s.strip_prefix("FG:") {
            let (factors, free) = match body.split_once("+r") {
                Some((f, r)) => (f, r.parse::<usize>().map_err(|_| bad("free rank is not a number"))?),
                None => (body, 0),
            };
            let mut ds = Vec::new();
            for part in factors.split(',').filter(|p| !p.is_empty()) {
                let d: BigInt = part.trim().parse().map_err(|_| bad("factor is not a number"))?;
                if d < BigInt::from(2) {
                    return Err(bad("invariant factors must be at least 2"));
                }
                ds.push(d);
            }
            return Ok(CoefficientSpec::Group(FgAbGroup::from_factors(free, &ds)));
        }
        Err(bad("expected Z, Z/m or FG:<factors>[+r<rank>]"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("Z".parse::<CoefficientSpec>().unwrap(), CoefficientSpec::Integers);
        assert_eq!("Z/6".parse::<CoefficientSpec>().unwrap(), CoefficientSpec::Mod(6));
        let g = "FG:2,4+r1".parse::<CoefficientSpec>().unwrap();
        assert_eq!(g.group(), FgAbGroup::new(1, &[2, 4]));
        assert_eq!(g.to_string(), "FG:2,4+r1");
        assert!("Z/1".parse::<CoefficientSpec>().is_err());
        assert!("Q".parse::<CoefficientSpec>().is_err());
        assert!("FG:1".parse::<CoefficientSpec>().is_err());
    }

    #[test]
    fn prime_detection() {
        assert_eq!(CoefficientSpec::Mod(7).prime_field(), Some(7));
        assert_eq!(CoefficientSpec::Mod(4).prime_field(), None);
        assert_eq!(CoefficientSpec::Group(FgAbGroup::cyclic(3)).prime_field(), Some(3));
        assert!(CoefficientSpec::Group(FgAbGroup::free(1)).is_integers());
    }
}
