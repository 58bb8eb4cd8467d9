//! Exact scalars, sparse vectors and the elimination routines built on them.

mod matrix;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::{dense_to_sparse, outer_factor, rank1_decompose_2x2, sparse_to_dense, Matrix};
pub use scalar::{Field, Scalar};
pub use sparse::{tensor, SparseVector};
pub use subspace::{codimension_of_span, intersect, kernel, rank, solve_membership, Eliminator, Subspace};
