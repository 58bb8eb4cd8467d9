use serde::{Deserialize, Serialize};

use crate::linalg::{Eliminator, Scalar, SparseVector, Subspace};
use crate::quiver::{Path, Quiver};
use crate::{Element, Tensor};

use super::Coalgebra;

/// The path coalgebra of a quiver: `Δ(p) = Σ_{qr=p} q⊗r`, `ε(v) = 1` on vertices.
#[derive(Clone, Copy, Debug)]
pub struct PathCoalgebra<'a> {
    pub quiver: &'a Quiver,
}

impl Coalgebra for PathCoalgebra<'_> {
    type Label = Path;

    fn delta(&self, p: &Path) -> Tensor {
        p.splits().into_iter().map(|qr| (qr, Scalar::one())).collect()
    }

    fn epsilon(&self, p: &Path) -> Scalar {
        if p.is_vertex() {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }
}

pub fn comultiply(c: &Element) -> Tensor {
    c.flat_map(|p| p.splits().into_iter().map(|qr| (qr, Scalar::one())).collect())
}

pub fn counit(c: &Element) -> Scalar {
    c.iter().filter(|(p, _)| p.is_vertex()).map(|(_, k)| k.clone()).sum()
}

/// Left and right contractions `(q*⊗id)Δ(v)` and `(id⊗q*)Δ(v)` for every path `q`.
fn contractions(v: &Element) -> Vec<Element> {
    let d = comultiply(v);
    let mut by_left: std::collections::BTreeMap<&Path, Element> = Default::default();
    let mut by_right: std::collections::BTreeMap<&Path, Element> = Default::default();
    for ((a, b), k) in d.iter() {
        by_left.entry(a).or_default().add_term(b.clone(), k.clone());
        by_right.entry(b).or_default().add_term(a.clone(), k.clone());
    }
    by_left.into_values().chain(by_right.into_values()).collect()
}

/// The smallest subcoalgebra containing the given elements, as an echelon basis.
pub fn subcoalgebra_closure(elements: &[Element]) -> Subspace<Path> {
    let mut span = Subspace::new();
    let mut pending: Vec<Element> = elements.to_vec();
    while let Some(v) = pending.pop() {
        if span.insert(v.clone()) {
            pending.extend(contractions(&v));
        }
    }
    span
}

/// Whether `Δ(s) ⊆ s ⊗ s`, tested through the contractions of a basis.
pub fn is_subcoalgebra(s: &Subspace<Path>) -> bool {
    s.basis().iter().all(|b| contractions(b).iter().all(|c| s.contains(c)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeResult {
    pub basis: Subspace<Path>,
    pub max_len: usize,
    /// true when the truncation contains every path of the quiver
    pub exact: bool,
}

/// `X ∧ Y = Δ⁻¹(X⊗C + C⊗Y)`, computed among paths of length at most `max_len`.
///
/// `X⊗C + C⊗Y` is the kernel of `π_X ⊗ π_Y`, where `π` is reduction modulo an
/// echelon basis, so the wedge is the kernel of `p ↦ Σ_{qr=p} π_X(q) ⊗ π_Y(r)`.
pub fn wedge(x: &Subspace<Path>, y: &Subspace<Path>, quiver: &Quiver, max_len: usize) -> WedgeResult {
    let paths = quiver.enumerate_paths(max_len);
    let mut elim: Eliminator<(Path, Path)> = Eliminator::new();
    for p in &paths.paths {
        let mut image = SparseVector::zero();
        for (q, r) in p.splits() {
            let rq = x.reduce(&SparseVector::unit(q));
            let rr = y.reduce(&SparseVector::unit(r));
            image.axpy(&Scalar::one(), &crate::linalg::tensor(&rq, &rr));
        }
        elim.push(&image);
    }
    let mut basis = Subspace::new();
    for k in elim.kernel() {
        basis.insert(k.map_labels(|&i| paths.paths[i].clone()));
    }
    WedgeResult {
        basis,
        max_len,
        exact: paths.exhaustive,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HullSide {
    /// paths ending at the vertex
    Left,
    /// paths starting at the vertex
    Right,
}

/// Paths starting (`Right`) or ending (`Left`) at `v`, up to `max_len`.
pub fn hull_span(v: usize, side: HullSide, quiver: &Quiver, max_len: usize) -> Vec<Path> {
    match side {
        HullSide::Right => quiver.paths_from(v, max_len),
        HullSide::Left => quiver.paths_to(v, max_len),
    }
}

/// The grouplike elements: one per vertex.
pub fn grouplike_coradical(quiver: &Quiver) -> Vec<Path> {
    quiver.vertex_paths()
}
