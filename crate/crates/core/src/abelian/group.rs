use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::smith::{smith_with, Track};

/// A finitely generated abelian group `Z^free_rank + Z/d1 + ... + Z/dk` in
/// invariant-factor form: every `di >= 2` and `di | d(i+1)`.
///
/// Canonical generators are ordered torsion first (one per invariant factor,
/// in order) and then the free generators. Elements are coordinate vectors in
/// that basis with torsion coordinates reduced into `[0, di)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/m`; `m = 0` gives `Z` and `m = 1` the trivial group.
    pub fn cyclic(m: u64) -> Self {
        Self::from_factors(0, &[BigInt::from(m)])
    }

    /// Normalizes an arbitrary list of cyclic orders. Zeros count as free
    /// summands, units are dropped, and the rest are rearranged into an
    /// invariant-factor chain (so `Z/2 + Z/3` becomes `Z/6`).
    pub fn from_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut t: Vec<BigInt> = Vec::new();
        for f in factors {
            let f = f.abs();
            if f.is_zero() {
                free += 1;
            } else if !f.is_one() {
                t.push(f);
            }
        }
        // Pairwise (gcd, lcm) sweep yields a divisibility chain.
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                if !t[j].is_multiple_of(&t[i]) {
                    let g = t[i].gcd(&t[j]);
                    let l = &t[i] / &g * &t[j];
                    t[i] = g;
                    t[j] = l;
                }
            }
        }
        t.retain(|d| !d.is_one());
        FgAbGroup {
            free_rank: free,
            torsion: t,
        }
    }

    /// Convenience constructor from machine integers.
    pub fn new(free_rank: usize, torsion: &[u64]) -> Self {
        let f: Vec<BigInt> = torsion.iter().map(|&d| BigInt::from(d)).collect();
        Self::from_factors(free_rank, &f)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of canonical generators.
    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// Order of each canonical generator, with `0` for free ones.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        v
    }

    /// Relation matrix of the free cover: `diag(d1, ..., dk, 0, ..., 0)`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        IntMatrix::diagonal(n, n, &self.generator_orders())
    }

    /// If this group is `Z/p` for a prime `p` that fits a machine word.
    pub fn as_prime_field(&self) -> Option<u64> {
        if self.free_rank != 0 || self.torsion.len() != 1 {
            return None;
        }
        let p = self.torsion[0].to_u64()?;
        is_prime(p).then_some(p)
    }

    pub fn reduce_element(&self, x: &mut [BigInt]) {
        assert_eq!(x.len(), self.num_generators(), "element length mismatch");
        for (xi, d) in x.iter_mut().zip(&self.torsion) {
            *xi = xi.mod_floor(d);
        }
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.num_generators()]
    }

    pub fn add_elements(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce_element(&mut s);
        s
    }

    /// `n * a`, the n-fold sum (inverse for negative `n`).
    pub fn scale_element(&self, n: &BigInt, a: &[BigInt]) -> Vec<BigInt> {
        let mut s: Vec<BigInt> = a.iter().map(|x| x * n).collect();
        self.reduce_element(&mut s);
        s
    }

    /// Enumerates all elements of a finite group in lexicographic order.
    /// Returns `None` for infinite groups or more than `limit` elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?.to_usize()?;
        if order > limit {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let d = d.to_u64()?;
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |k| {
                        let mut q = p.clone();
                        q.push(BigInt::from(k));
                        q
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// Cyclic decomposition used by the bifunctor formulas: each torsion
    /// factor, then `0` for every free summand.
    fn cyclic_parts(&self) -> Vec<BigInt> {
        self.generator_orders()
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut k = 1;
            while i + k < self.torsion.len() && &self.torsion[i + k] == d {
                k += 1;
            }
            if k == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{k}"));
            }
            i += k;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn direct_sum(parts: &[FgAbGroup]) -> FgAbGroup {
    let free = parts.iter().map(|g| g.free_rank).sum();
    let factors: Vec<BigInt> = parts.iter().flat_map(|g| g.torsion.iter().cloned()).collect();
    FgAbGroup::from_factors(free, &factors)
}

/// `Z^rows / column lattice of m`.
pub fn cokernel_group(m: &IntMatrix) -> FgAbGroup {
    let diag = smith_with(m, Track::NONE).diag;
    FgAbGroup::from_factors(m.rows() - diag.len(), &diag)
}

/// Pairwise bifunctor on cyclic decompositions. `rule(m, n)` receives the
/// orders of two cyclic summands (`0` meaning `Z`) and returns the order of
/// their contribution, or `None` for the trivial group.
fn bifunctor(g: &FgAbGroup, h: &FgAbGroup, rule: impl Fn(&BigInt, &BigInt) -> Option<BigInt>) -> FgAbGroup {
    let mut factors = Vec::new();
    for m in g.cyclic_parts() {
        for n in h.cyclic_parts() {
            if let Some(k) = rule(&m, &n) {
                factors.push(k);
            }
        }
    }
    FgAbGroup::from_factors(0, &factors)
}

/// `g (x) h`: `Z (x) X = X`, `Z/m (x) Z/n = Z/gcd(m, n)`.
pub fn tensor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    bifunctor(g, h, |m, n| match (m.is_zero(), n.is_zero()) {
        (true, true) => Some(BigInt::zero()),
        (true, false) => Some(n.clone()),
        (false, true) => Some(m.clone()),
        (false, false) => Some(m.gcd(n)),
    })
}

/// `Tor_1(g, h)`: vanishes on free summands, `Z/gcd(m, n)` on cyclic pairs.
pub fn tor1(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    bifunctor(g, h, |m, n| (!m.is_zero() && !n.is_zero()).then(|| m.gcd(n)))
}

/// `Hom(g, h)`.
pub fn hom_group(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    bifunctor(g, h, |m, n| match (m.is_zero(), n.is_zero()) {
        (true, _) => Some(n.clone()),
        (false, true) => None,
        (false, false) => Some(m.gcd(n)),
    })
}

/// `Ext^1(g, h)`.
pub fn ext1(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    bifunctor(g, h, |m, n| match (m.is_zero(), n.is_zero()) {
        (true, _) => None,
        (false, true) => Some(m.clone()),
        (false, false) => Some(m.gcd(n)),
    })
}

/// A group presented as `Z^k / column lattice of relations`, together with
/// coordinate changes to and from its canonical form.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub group: FgAbGroup,
    /// `g x k`: maps presentation coordinates to canonical coordinates
    /// (reduce afterwards with [`FgAbGroup::reduce_element`]).
    pub to_canonical: IntMatrix,
    /// `k x g`: columns are representatives of the canonical generators.
    pub from_canonical: IntMatrix,
}

impl Presentation {
    pub fn new(relations: &IntMatrix) -> Self {
        let k = relations.rows();
        let data = smith_with(relations, Track::LEFT);
        let u = data.u.expect("tracked");
        let u_inv = data.u_inv.expect("tracked");
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..k {
            let d = data.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if !d.is_one() {
                keep.push(i);
                orders.push(d);
            }
        }
        let group = FgAbGroup::from_factors(0, &orders);
        debug_assert_eq!(group.generator_orders(), orders);
        let mut to_canonical = u.select_rows(&keep);
        for (r, d) in orders.iter().enumerate() {
            if !d.is_zero() {
                for c in 0..k {
                    let e = to_canonical.get(r, c).mod_floor(d);
                    to_canonical.set(r, c, e);
                }
            }
        }
        Presentation {
            group,
            to_canonical,
            from_canonical: u_inv.select_cols(&keep),
        }
    }

    pub fn canonical_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.to_canonical.mul_vec(x);
        self.group.reduce_element(&mut c);
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(free: usize, t: &[u64]) -> FgAbGroup {
        FgAbGroup::new(free, t)
    }

    #[test]
    fn normalization() {
        assert_eq!(g(0, &[2, 3]), g(0, &[6]));
        assert_eq!(g(0, &[4, 6]).torsion(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g(1, &[1, 0]), g(2, &[]));
        assert_eq!(direct_sum(&[g(0, &[2]), g(1, &[]), g(0, &[2])]), g(1, &[2, 2]));
        assert_eq!(direct_sum(&[]), FgAbGroup::trivial());
        assert_eq!(direct_sum(&[g(0, &[2]), g(0, &[3])]), g(0, &[6]));
    }

    #[test]
    fn bifunctor_examples() {
        assert_eq!(tensor(&g(0, &[4]), &g(0, &[6])), g(0, &[2]));
        assert_eq!(tensor(&g(1, &[]), &g(1, &[2])), g(1, &[2]));
        assert_eq!(tensor(&g(1, &[2, 2]), &g(0, &[2])), g(0, &[2, 2, 2]));

        assert_eq!(tor1(&g(1, &[]), &g(0, &[5])), FgAbGroup::trivial());
        assert_eq!(tor1(&g(0, &[4]), &g(0, &[6])), g(0, &[2]));
        assert_eq!(tor1(&g(1, &[2, 2]), &g(0, &[2])), g(0, &[2, 2]));

        assert_eq!(hom_group(&g(0, &[4]), &g(0, &[6])), g(0, &[2]));
        assert_eq!(hom_group(&g(0, &[2]), &g(1, &[])), FgAbGroup::trivial());
        assert_eq!(hom_group(&g(2, &[]), &g(0, &[3])), g(0, &[3, 3]));

        assert_eq!(ext1(&g(1, &[]), &g(3, &[5])), FgAbGroup::trivial());
        assert_eq!(ext1(&g(0, &[2]), &g(1, &[])), g(0, &[2]));
        assert_eq!(ext1(&g(0, &[4]), &g(0, &[6])), g(0, &[2]));
        assert_eq!(ext1(&g(0, &[2]), &g(1, &[2])), g(0, &[2, 2]));
    }

    #[test]
    fn cokernels() {
        assert_eq!(cokernel_group(&IntMatrix::from_rows(&[[-1, -1], [-1, 1]])), g(0, &[2]));
        assert_eq!(cokernel_group(&IntMatrix::from_rows(&[[-1, -1], [-1, -1]])), g(1, &[]));
        assert_eq!(cokernel_group(&IntMatrix::zeros(2, 2)), g(2, &[]));
        assert_eq!(cokernel_group(&IntMatrix::zeros(0, 3)), FgAbGroup::trivial());
    }

    #[test]
    fn display() {
        assert_eq!(g(1, &[2, 2]).to_string(), "Z + (Z/2)^2");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(g(3, &[2, 6]).to_string(), "Z^3 + Z/2 + Z/6");
    }

    #[test]
    fn presentation_round_trip() {
        let rel = IntMatrix::from_rows(&[[2, 0], [0, 3], [0, 0]]);
        let p = Presentation::new(&rel);
        assert_eq!(p.group, g(1, &[6]));
        // Canonical generators map back to themselves.
        let n = p.group.num_generators();
        for j in 0..n {
            let rep = p.from_canonical.column(j);
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            assert_eq!(p.canonical_coords(&rep), e);
        }
    }
}
