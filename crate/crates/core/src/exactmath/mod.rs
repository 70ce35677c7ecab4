//! Exact field arithmetic and dense linear algebra.

mod mat;
mod modular;
mod scalar;
mod subspace;

pub use mat::{determinant, dot, echelon, kernel_basis, rank, Mat};
pub(crate) use modular::reconstruct;
pub(crate) use scalar::{invmod, mulmod, powmod};
pub use scalar::{square_part, FieldKind, Scalar};
pub use subspace::{Coordinates, Subspace};
