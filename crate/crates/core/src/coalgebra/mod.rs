//! Coalgebras given on a basis, and the path coalgebra of a quiver.

mod path;

use std::fmt::Debug;

use crate::linalg::{Scalar, SparseVector};

pub use path::{
    comultiply, counit, grouplike_coradical, hull_span, is_subcoalgebra, subcoalgebra_closure, wedge, HullSide,
    PathCoalgebra, WedgeResult,
};

/// A coalgebra described by the comultiplication and counit of basis elements.
pub trait Coalgebra {
    type Label: Ord + Clone + Debug;

    fn delta(&self, b: &Self::Label) -> SparseVector<(Self::Label, Self::Label)>;

    fn epsilon(&self, b: &Self::Label) -> Scalar;

    fn delta_vec(&self, v: &SparseVector<Self::Label>) -> SparseVector<(Self::Label, Self::Label)> {
        v.flat_map(|b| self.delta(b))
    }

    fn epsilon_vec(&self, v: &SparseVector<Self::Label>) -> Scalar {
        v.iter().map(|(b, c)| c * &self.epsilon(b)).sum()
    }
}

/// `(Δ⊗id)Δ(v) = (id⊗Δ)Δ(v)`
pub fn is_coassociative_on<C: Coalgebra>(c: &C, v: &SparseVector<C::Label>) -> bool {
    let d = c.delta_vec(v);
    let left = d.flat_map(|(a, b)| c.delta(a).map_labels(|(x, y)| (x.clone(), y.clone(), b.clone())));
    let right = d.flat_map(|(a, b)| c.delta(b).map_labels(|(x, y)| (a.clone(), x.clone(), y.clone())));
    left == right
}

/// `(ε⊗id)Δ(v) = v = (id⊗ε)Δ(v)`
pub fn satisfies_counit_on<C: Coalgebra>(c: &C, v: &SparseVector<C::Label>) -> bool {
    let d = c.delta_vec(v);
    let mut left = SparseVector::zero();
    let mut right = SparseVector::zero();
    for ((a, b), k) in d.iter() {
        left.add_term(b.clone(), k * &c.epsilon(a));
        right.add_term(a.clone(), k * &c.epsilon(b));
    }
    &left == v && &right == v
}

/// Checks that the linear map `f` (given on basis elements) respects the
/// comultiplications and counits on the element `v`.
pub fn is_morphism_on<C: Coalgebra, D: Coalgebra>(
    source: &C,
    target: &D,
    f: impl Fn(&C::Label) -> SparseVector<D::Label>,
    v: &SparseVector<C::Label>,
) -> bool {
    let fv = v.flat_map(&f);
    let lhs = target.delta_vec(&fv);
    let rhs = source
        .delta_vec(v)
        .flat_map(|(a, b)| crate::linalg::tensor(&f(a), &f(b)));
    lhs == rhs && target.epsilon_vec(&fv) == source.epsilon_vec(v)
}

/// The tensor product coalgebra `C ⊗ D`.
pub struct TensorCoalgebra<'a, C, D> {
    pub left: &'a C,
    pub right: &'a D,
}

impl<C: Coalgebra, D: Coalgebra> Coalgebra for TensorCoalgebra<'_, C, D> {
    type Label = (C::Label, D::Label);

    fn delta(&self, b: &Self::Label) -> SparseVector<(Self::Label, Self::Label)> {
        let dl = self.left.delta(&b.0);
        let dr = self.right.delta(&b.1);
        let mut out = SparseVector::zero();
        for ((c1, c2), x) in dl.iter() {
            for ((d1, d2), y) in dr.iter() {
                out.add_term(((c1.clone(), d1.clone()), (c2.clone(), d2.clone())), x * y);
            }
        }
        out
    }

    fn epsilon(&self, b: &Self::Label) -> Scalar {
        self.left.epsilon(&b.0) * self.right.epsilon(&b.1)
    }
}
