use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::{FgAbGroup, Presentation};
use super::hermite::{hermite_with, HermiteForm};
use super::matrix::IntMatrix;
use super::AbelianError;

/// A homomorphism between canonical groups, given by its action on canonical
/// generators (column `j` is the image of generator `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbHom {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    /// Checks well-definedness and reduces torsion coordinates.
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self, AbelianError> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators() {
            return Err(AbelianError::ShapeMismatch {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: codomain.num_generators(),
                expected_cols: domain.num_generators(),
            });
        }
        let orders = domain.generator_orders();
        let cod = codomain.generator_orders();
        let mut matrix = matrix;
        for (j, d) in orders.iter().enumerate() {
            for (i, e) in cod.iter().enumerate() {
                let a = matrix.get(i, j).clone();
                // d * a must vanish in Z/e (e = 0 meaning Z).
                let ok = if e.is_zero() {
                    d.is_zero() || a.is_zero()
                } else {
                    (d * &a).is_multiple_of(e)
                };
                if !ok {
                    return Err(AbelianError::IllDefined { generator: j });
                }
                if !e.is_zero() {
                    matrix.set(i, j, a.mod_floor(e));
                }
            }
        }
        Ok(AbHom {
            domain,
            codomain,
            matrix,
        })
    }

    /// Builds a map between presented groups from a matrix on presentation
    /// coordinates.
    pub fn from_presentations(src: &Presentation, dst: &Presentation, raw: &IntMatrix) -> Result<Self, AbelianError> {
        let m = &(&dst.to_canonical * raw) * &src.from_canonical;
        AbHom::new(src.group.clone(), dst.group.clone(), m)
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        let n = g.num_generators();
        AbHom::new(g.clone(), g.clone(), IntMatrix::identity(n)).expect("identity is well defined")
    }

    pub fn zero(domain: &FgAbGroup, codomain: &FgAbGroup) -> Self {
        AbHom {
            matrix: IntMatrix::zeros(codomain.num_generators(), domain.num_generators()),
            domain: domain.clone(),
            codomain: codomain.clone(),
        }
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }
    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.codomain.reduce_element(&mut y);
        y
    }

    /// `other . self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom, AbelianError> {
        if self.codomain != other.domain {
            return Err(AbelianError::NotComposable);
        }
        AbHom::new(self.domain.clone(), other.codomain.clone(), &other.matrix * &self.matrix)
    }

    /// Generators (columns over the domain's free cover) of the preimage of
    /// the codomain relations: `{x : f(x) = 0 in the codomain}` lifted.
    fn kernel_lattice(&self) -> IntMatrix {
        let rel = self.codomain.relation_matrix();
        let stacked = self.matrix.hstack(&rel);
        let k = hermite_with(&stacked, false).kernel();
        let top: Vec<usize> = (0..self.matrix.cols()).collect();
        k.select_rows(&top)
    }

    pub fn image_group(&self) -> FgAbGroup {
        super::group::cokernel_group(&self.kernel_lattice())
    }

    pub fn kernel_group(&self) -> FgAbGroup {
        let lattice = self.kernel_lattice();
        let basis = lattice_basis(&lattice);
        let hf = hermite_with(&basis, false);
        let rel = self.domain.relation_matrix();
        let cols: Vec<Vec<BigInt>> = rel
            .columns()
            .iter()
            .map(|c| {
                hf.solve(c)
                    .expect("domain relations lie in the kernel lattice of a well-defined map")
            })
            .collect();
        super::group::cokernel_group(&IntMatrix::from_columns(basis.cols(), &cols))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_group().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        // Every codomain generator must lie in image + relations.
        let span = self.matrix.hstack(&self.codomain.relation_matrix());
        let hf = hermite_with(&span, false);
        (0..self.codomain.num_generators()).all(|i| {
            let mut e = vec![BigInt::zero(); self.codomain.num_generators()];
            e[i] = BigInt::from(1);
            hf.solve(&e).is_some()
        })
    }
}

/// Columns of a lattice basis for the column span of `m`.
pub(crate) fn lattice_basis(m: &IntMatrix) -> IntMatrix {
    let hf: HermiteForm = hermite_with(m, false);
    let idx: Vec<usize> = (0..hf.rank()).collect();
    hf.h().select_cols(&idx)
}

pub fn hom_image_kernel(f: &AbHom) -> (FgAbGroup, FgAbGroup) {
    (f.image_group(), f.kernel_group())
}

/// `image(f) == kernel(g)` as subgroups of the middle group, tested by two
/// lattice-membership checks on its free cover.
pub fn check_exact_at(f: &AbHom, g: &AbHom) -> Result<bool, AbelianError> {
    if f.codomain != g.domain {
        return Err(AbelianError::NotComposable);
    }
    // image(f) in kernel(g): g f = 0.
    let gf = &g.matrix * &f.matrix;
    let rel_c = hermite_with(&g.codomain.relation_matrix(), false);
    for c in gf.columns() {
        if rel_c.solve(&c).is_none() {
            return Ok(false);
        }
    }
    // kernel(g) in image(f) + relations of the middle group.
    let span = f.matrix.hstack(&f.codomain.relation_matrix());
    let hf = hermite_with(&span, false);
    for c in g.kernel_lattice().columns() {
        if hf.solve(&c).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
