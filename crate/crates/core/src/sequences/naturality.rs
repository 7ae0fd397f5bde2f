use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{ChainSES, SequenceError};
use crate::abelian::{check_exact_at, direct_sum, AbHom, FgAbGroup, IntMatrix, Presentation};
use crate::moore::{map_classes, ChainComplex, ChainMap, CoefficientSpec, HomologyBasis, MooreError};

/// The `m`-torsion subgroup of a canonical group, `Tor(H, Z/m)`.
struct TorsionPart {
    group_gens: usize,
    /// Torsion coordinates of `H` meeting the subgroup, with `d / gcd(d, m)`.
    idx: Vec<usize>,
    steps: Vec<BigInt>,
    pres: Presentation,
}

impl TorsionPart {
    fn new(h: &FgAbGroup, m: u64) -> Self {
        let mb = BigInt::from(m);
        let mut idx = Vec::new();
        let mut steps = Vec::new();
        let mut orders = Vec::new();
        for (k, d) in h.torsion().iter().enumerate() {
            let g = d.gcd(&mb);
            if g > BigInt::from(1) {
                idx.push(k);
                steps.push(d / &g);
                orders.push(g);
            }
        }
        let n = orders.len();
        let pres = Presentation::new(&IntMatrix::diagonal(n, n, &orders));
        TorsionPart {
            group_gens: h.num_generators(),
            idx,
            steps,
            pres,
        }
    }

    fn group(&self) -> &FgAbGroup {
        &self.pres.group
    }

    /// Coordinates in `H` of canonical generator `j`.
    fn embed(&self, j: usize) -> Vec<BigInt> {
        let t = self.pres.from_canonical.column(j);
        let mut h = vec![BigInt::zero(); self.group_gens];
        for ((&k, s), x) in self.idx.iter().zip(&self.steps).zip(&t) {
            h[k] = s * x;
        }
        h
    }

    /// Canonical coordinates of an `m`-torsion element given in `H`
    /// coordinates.
    fn coords(&self, h: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut t = Vec::with_capacity(self.idx.len());
        for (k, x) in h.iter().enumerate() {
            match self.idx.iter().position(|&i| i == k) {
                Some(p) => {
                    let (q, r) = x.div_rem(&self.steps[p]);
                    if !r.is_zero() {
                        return None;
                    }
                    t.push(q);
                }
                None if !x.is_zero() => return None,
                None => {}
            }
        }
        Some(self.pres.canonical_coords(&t))
    }
}

/// Chain-level universal coefficient row for `Z/m` in one degree.
struct UctRow {
    degree: usize,
    modulus: u64,
    integral: HomologyBasis,
    previous: Option<HomologyBasis>,
    left: Presentation,
    middle: HomologyBasis,
    right: TorsionPart,
    iota: AbHom,
    kappa: AbHom,
}

impl UctRow {
    fn new(c: &ChainComplex, m: u64, n: usize) -> Result<Self, SequenceError> {
        let integral = HomologyBasis::integral(c, n)?;
        let previous = if n == 0 { None } else { Some(HomologyBasis::integral(c, n - 1)?) };
        let hn = integral.group();
        let k = hn.num_generators();
        let left = Presentation::new(&hn.relation_matrix().hstack(&IntMatrix::identity(k).scale(&BigInt::from(m))));
        let middle = HomologyBasis::modular(c, m, n)?;
        let right = TorsionPart::new(previous.as_ref().map_or(&FgAbGroup::trivial(), |b| b.group()), m);

        let cols: Vec<Vec<BigInt>> = (0..left.group.num_generators())
            .map(|j| {
                let z = combine(&integral, &left.from_canonical.column(j), c.rank(n));
                middle.class_of(&z).expect("integral cycles are cycles mod m")
            })
            .collect();
        let iota = AbHom::new(
            left.group.clone(),
            middle.group().clone(),
            IntMatrix::from_columns(middle.group().num_generators(), &cols),
        )?;

        let mb = BigInt::from(m);
        let mut cols = Vec::new();
        for j in 0..middle.group().num_generators() {
            let Some(prev) = &previous else {
                cols.push(Vec::new());
                continue;
            };
            let w = c.boundary(n).mul_vec(&middle.representative(j));
            let y: Vec<BigInt> = w
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(&mb);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect();
            let h = prev.class_of(&y).expect("Bockstein images are cycles");
            cols.push(right.coords(&h).ok_or(SequenceError::NotExact {
                degree: n,
                detail: "Bockstein image is not m-torsion",
            })?);
        }
        let kappa = AbHom::new(
            middle.group().clone(),
            right.group().clone(),
            IntMatrix::from_columns(right.group().num_generators(), &cols),
        )?;
        Ok(UctRow {
            degree: n,
            modulus: m,
            integral,
            previous,
            left,
            middle,
            right,
            iota,
            kappa,
        })
    }

    fn is_exact(&self) -> bool {
        let split = direct_sum(&[self.left.group.clone(), self.right.group().clone()]) == *self.middle.group();
        split
            && self.iota.is_injective()
            && self.kappa.is_surjective()
            && matches!(check_exact_at(&self.iota, &self.kappa), Ok(true))
    }
}

/// `sum_k c_k rep_k` over the canonical generators of a homology basis.
fn combine(b: &HomologyBasis, c: &[BigInt], rank: usize) -> Vec<BigInt> {
    let mut z = vec![BigInt::zero(); rank];
    for (k, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (zi, ri) in z.iter_mut().zip(b.representative(k)) {
            *zi += x * ri;
        }
    }
    z
}

/// Vertical maps between two rows, as (left, middle, right).
fn verticals(cm: &ChainMap, x: &UctRow, y: &UctRow) -> Result<(AbHom, AbHom, AbHom), SequenceError> {
    let n = x.degree;
    let h = map_classes(cm, n, &x.integral, &y.integral);
    let cols: Vec<Vec<BigInt>> = (0..x.left.group.num_generators())
        .map(|j| y.left.canonical_coords(&h.apply(&x.left.from_canonical.column(j))))
        .collect();
    let left = AbHom::new(
        x.left.group.clone(),
        y.left.group.clone(),
        IntMatrix::from_columns(y.left.group.num_generators(), &cols),
    )?;
    let middle = map_classes(cm, n, &x.middle, &y.middle);
    let cols = match (&x.previous, &y.previous) {
        (Some(px), Some(py)) => {
            let hp = map_classes(cm, n - 1, px, py);
            (0..x.right.group().num_generators())
                .map(|j| {
                    y.right.coords(&hp.apply(&x.right.embed(j))).ok_or(SequenceError::NotExact {
                        degree: n,
                        detail: "torsion is not preserved",
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        _ => vec![Vec::new(); x.right.group().num_generators()],
    };
    let right = AbHom::new(
        x.right.group().clone(),
        y.right.group().clone(),
        IntMatrix::from_columns(y.right.group().num_generators(), &cols),
    )?;
    Ok((left, middle, right))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCheck {
    pub degree: usize,
    pub modulus: u64,
    /// `"inject"` or `"project"`.
    pub map: &'static str,
    /// `"left"` (tensor side) or `"right"` (Tor side).
    pub square: &'static str,
    pub commutes: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NaturalityReport {
    pub squares: Vec<SquareCheck>,
    /// `(degree, modulus, complex)` for rows that failed to be split exact.
    pub inexact_rows: Vec<(usize, u64, &'static str)>,
}

impl NaturalityReport {
    pub fn is_ok(&self) -> bool {
        self.inexact_rows.is_empty() && self.squares.iter().all(|s| s.commutes)
    }
}

/// Builds the universal coefficient rows of `sub`, `mid` and `quot` at chain
/// level (one per cyclic torsion summand `Z/m` of `A`) and checks that the
/// maps induced by the sequence make every square commute. Free summands of
/// `A` contribute identity rows and need no check.
pub fn uct_naturality_check(
    ses: &ChainSES,
    a: &CoefficientSpec,
    n_max: usize,
) -> Result<NaturalityReport, SequenceError> {
    if n_max + 1 > ses.mid().length() {
        return Err(SequenceError::MissingDegree { n: n_max });
    }
    let mut report = NaturalityReport::default();
    for d in a.group().torsion() {
        let m = d
            .to_u64()
            .ok_or_else(|| MooreError::InvalidCoefficients(format!("factor {d} exceeds 64 bits")))?;
        for n in 0..=n_max {
            let rows = [
                UctRow::new(ses.sub(), m, n)?,
                UctRow::new(ses.mid(), m, n)?,
                UctRow::new(ses.quot(), m, n)?,
            ];
            for (row, name) in rows.iter().zip(["sub", "mid", "quot"]) {
                if !row.is_exact() {
                    report.inexact_rows.push((n, m, name));
                }
            }
            for (k, (cm, name)) in [(ses.inject(), "inject"), (ses.project(), "project")].into_iter().enumerate() {
                let (x, y) = (&rows[k], &rows[k + 1]);
                let (l, mid, r) = verticals(cm, x, y)?;
                let left_ok = l.then(&y.iota)? == x.iota.then(&mid)?;
                let right_ok = mid.then(&y.kappa)? == x.kappa.then(&r)?;
                for (square, commutes) in [("left", left_ok), ("right", right_ok)] {
                    report.squares.push(SquareCheck {
                        degree: n,
                        modulus: x.modulus,
                        map: name,
                        square,
                        commutes,
                    });
                }
            }
        }
    }
    Ok(report)
}
