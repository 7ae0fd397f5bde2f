//! Exact integer linear algebra and finitely generated abelian groups.

mod scalar;

pub mod group;
pub mod hermite;
pub mod hom;
pub mod matrix;
pub mod smith;

use thiserror::Error;

pub use group::{cokernel_group, direct_sum, ext1, hom_group, tensor, tor1, FgAbGroup, Presentation};
pub use hermite::{hermite_solve, integer_kernel, HermiteForm};
pub use hom::{check_exact_at, hom_image_kernel, AbHom};
pub use matrix::{int_vec, IntMatrix};
pub use smith::{invariant_factors, smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("homomorphism is not well defined on generator {generator}")]
    IllDefined { generator: usize },
    #[error("codomain of the first map differs from the domain of the second")]
    NotComposable,
}
