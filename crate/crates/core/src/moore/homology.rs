use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ChainComplex, CoefficientSpec, MooreError};
use crate::abelian::hermite::hermite_with;
use crate::abelian::hom::lattice_basis;
use crate::abelian::{direct_sum, integer_kernel, tensor, tor1, FgAbGroup, HermiteForm, IntMatrix, Presentation};

/// Explicit cycles for one homology group: a lattice basis `Z` of the cycle
/// lattice and a presentation of `Z / boundaries` in those coordinates.
///
/// With a modulus `m` the cycles are `{z : d z = 0 mod m}` and the boundaries
/// include `m Z^r`, which computes the homology of `C (x) Z/m`.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    degree: usize,
    modulus: Option<u64>,
    cycles: IntMatrix,
    solver: HermiteForm,
    presentation: Presentation,
}

impl HomologyBasis {
    pub fn integral(c: &ChainComplex, n: usize) -> Result<Self, MooreError> {
        c.check_homology_degree(n)?;
        let cycles = integer_kernel(c.boundary(n));
        Ok(Self::from_lattices(n, None, cycles, c.boundary(n + 1).clone()))
    }

    pub fn modular(c: &ChainComplex, m: u64, n: usize) -> Result<Self, MooreError> {
        c.check_homology_degree(n)?;
        if m < 2 {
            return Err(MooreError::InvalidCoefficients(format!("modulus {m} must be at least 2")));
        }
        let mb = BigInt::from(m);
        let d = c.boundary(n);
        let below = IntMatrix::identity(d.rows()).scale(&mb);
        let k = integer_kernel(&d.hstack(&below));
        let top: Vec<usize> = (0..d.cols()).collect();
        let cycles = lattice_basis(&k.select_rows(&top));
        let here = IntMatrix::identity(c.rank(n)).scale(&mb);
        let gens = c.boundary(n + 1).hstack(&here);
        Ok(Self::from_lattices(n, Some(m), cycles, gens))
    }

    pub(crate) fn from_lattices(degree: usize, modulus: Option<u64>, cycles: IntMatrix, boundaries: IntMatrix) -> Self {
        let solver = hermite_with(&cycles, false);
        let cols: Vec<Vec<BigInt>> = boundaries
            .columns()
            .iter()
            .map(|b| solver.solve(b).expect("boundaries are cycles"))
            .collect();
        let presentation = Presentation::new(&IntMatrix::from_columns(cycles.cols(), &cols));
        HomologyBasis {
            degree,
            modulus,
            cycles,
            solver,
            presentation,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }
    pub fn group(&self) -> &FgAbGroup {
        &self.presentation.group
    }
    /// Columns span the cycle lattice.
    pub fn cycles(&self) -> &IntMatrix {
        &self.cycles
    }

    /// Canonical coordinates of the class of `z`, or `None` if `z` is not a
    /// cycle.
    pub fn class_of(&self, z: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.solver.solve(z)?;
        Some(self.presentation.canonical_coords(&y))
    }

    /// A cycle representing canonical generator `j`.
    pub fn representative(&self, j: usize) -> Vec<BigInt> {
        self.cycles.mul_vec(&self.presentation.from_canonical.column(j))
    }
}

/// Per-degree homology groups with their coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub coefficients: CoefficientSpec,
    pub groups: Vec<FgAbGroup>,
}

impl HomologyResult {
    pub fn new(coefficients: CoefficientSpec, groups: Vec<FgAbGroup>) -> Self {
        HomologyResult { coefficients, groups }
    }

    pub fn degree(&self, n: usize) -> Option<&FgAbGroup> {
        self.groups.get(n)
    }

    /// Number of computed degrees.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// `ker d_n / im d_(n+1)`.
pub fn homology(c: &ChainComplex, n: usize) -> Result<FgAbGroup, MooreError> {
    Ok(HomologyBasis::integral(c, n)?.group().clone())
}

/// Rank of `m` over the field with `p` elements.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let p128 = p as u128;
    let mut rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e| {
                    let r = e % &pb;
                    let r = if r < BigInt::zero() { r + &pb } else { r };
                    r.to_u64().expect("residue fits")
                })
                .collect()
        })
        .collect();
    let cols = m.cols();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = mod_pow(rows[rank][col], p - 2, p);
        for e in rows[rank].iter_mut() {
            *e = ((*e as u128 * inv as u128) % p128) as u64;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let f = row[col] as u128;
            for (e, &q) in row.iter_mut().zip(&pivot_row) {
                let sub = (f * q as u128) % p128;
                *e = ((*e as u128 + p128 - sub) % p128) as u64;
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(b: u64, mut e: u64, p: u64) -> u64 {
    let p = p as u128;
    let mut acc = 1u128;
    let mut base = b as u128 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u64
}

/// `H_n(C (x) Z/p)` for a prime `p`, by ranks over the prime field.
pub fn homology_mod_prime(c: &ChainComplex, p: u64, n: usize) -> Result<FgAbGroup, MooreError> {
    c.check_homology_degree(n)?;
    let d = c.rank(n) - rank_mod_p(c.boundary(n), p) - rank_mod_p(c.boundary(n + 1), p);
    Ok(FgAbGroup::new(0, &vec![p; d]))
}

/// `H_n (x) A + Tor(H_(n-1), A)`.
pub fn homology_uct_route(c: &ChainComplex, a: &FgAbGroup, n: usize) -> Result<FgAbGroup, MooreError> {
    let hn = homology(c, n)?;
    let left = tensor(&hn, a);
    let right = if n == 0 {
        FgAbGroup::trivial()
    } else {
        tor1(&homology(c, n - 1)?, a)
    };
    Ok(direct_sum(&[left, right]))
}

/// Homology of `C (x) A` at chain level, splitting `A` into cyclic summands
/// and computing each `C (x) Z/d` through explicit cycle lattices.
pub fn chain_level_homology(c: &ChainComplex, a: &FgAbGroup, n: usize) -> Result<FgAbGroup, MooreError> {
    c.check_homology_degree(n)?;
    let mut parts = Vec::new();
    if a.free_rank() > 0 {
        let h = homology(c, n)?;
        parts.extend(std::iter::repeat_n(h, a.free_rank()));
    }
    for d in a.torsion() {
        let m = d
            .to_u64()
            .ok_or_else(|| MooreError::InvalidCoefficients(format!("torsion factor {d} exceeds 64 bits")))?;
        parts.push(HomologyBasis::modular(c, m, n)?.group().clone());
    }
    Ok(direct_sum(&parts))
}

/// `H_n(C; A)`. Integers and prime fields are computed directly; every other
/// finitely generated `A` goes through the universal coefficient splitting.
pub fn homology_with_coefficients(c: &ChainComplex, a: &CoefficientSpec, n: usize) -> Result<FgAbGroup, MooreError> {
    a.validate()?;
    c.check_homology_degree(n)?;
    if a.is_integers() {
        return homology(c, n);
    }
    if let Some(p) = a.prime_field() {
        return homology_mod_prime(c, p, n);
    }
    homology_uct_route(c, &a.group(), n)
}

/// All degrees `0..=c.homology_window()` (none when the complex has length 0).
pub fn homology_result(c: &ChainComplex, a: &CoefficientSpec) -> Result<HomologyResult, MooreError> {
    let top = c.length();
    let groups = (0..top)
        .map(|n| homology_with_coefficients(c, a, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HomologyResult::new(a.clone(), groups))
}
