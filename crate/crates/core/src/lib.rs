pub mod algebra;
pub mod coalgebra;
pub mod corpus;
pub mod dual;
pub mod error;
pub mod finite_dual;
pub mod incidence;
pub mod linalg;
pub mod parse;
pub mod product;
pub mod quiver;
pub mod representations;
pub mod suites;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar, SparseVector, Subspace};
pub use quiver::{Path, Quiver};

/// An element of the path coalgebra or of the quiver algebra: a finite
/// combination of paths.
pub type Element = SparseVector<Path>;

/// An element of `KΓ ⊗ KΓ`.
pub type Tensor = SparseVector<(Path, Path)>;
