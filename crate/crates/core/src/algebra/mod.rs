//! The quiver algebra: concatenation of paths, or zero.

mod bialgebra;
pub(crate) mod counterexample;
mod monomial;

use std::collections::BTreeSet;

use crate::error::Result;
use crate::linalg::{Scalar, SparseVector};
use crate::quiver::{Path, Quiver};
use crate::Element;

pub use bialgebra::{bialgebra_check, BialgebraReport};
pub use counterexample::{
    build_cycle_counterexample, build_multiarrow_counterexample, cycle_path, CycleCounterexample,
    MultiArrowCounterexample,
};
pub use monomial::{
    contains_cofinite_monomial_ideal, minimal_monomial_complement, monomial_closure, monomial_verdict,
    MonomialIdeal, MonomialVerdict,
};

pub fn multiply(a: &Element, b: &Element) -> Element {
    let mut out = SparseVector::zero();
    for (p, x) in a.iter() {
        for (q, y) in b.iter() {
            if let Some(pq) = p.compose(q) {
                out.add_term(pq, x * y);
            }
        }
    }
    out
}

/// Product with a check that both factors live in `quiver`.
pub fn multiply_in(quiver: &Quiver, a: &Element, b: &Element) -> Result<Element> {
    for p in a.labels().chain(b.labels()) {
        quiver.check_path(p)?;
    }
    Ok(multiply(a, b))
}

pub fn path_product(p: &Path, q: &Path) -> Element {
    match p.compose(q) {
        Some(pq) => SparseVector::unit(pq),
        None => SparseVector::zero(),
    }
}

/// Sum of the vertices at which the supports of the given elements start or end.
pub fn local_unit(elements: &[Element]) -> Element {
    let vs: BTreeSet<usize> = elements
        .iter()
        .flat_map(|e| e.labels().flat_map(|p| [p.source(), p.target()]).collect::<Vec<_>>())
        .collect();
    vs.into_iter().map(|v| (Path::vertex(v), Scalar::one())).collect()
}

/// The identity of a finite quiver algebra: the sum of all vertices.
pub fn identity(quiver: &Quiver) -> Element {
    quiver.vertex_paths().into_iter().map(|v| (v, Scalar::one())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(q: &Quiver, terms: &[(&str, i64)]) -> Element {
        terms.iter().map(|(p, c)| (q.parse_path(p).unwrap(), Scalar::from(*c))).collect()
    }

    #[test]
    fn products() {
        let q = Quiver::from_parts(&["u", "v", "w"], &[("x", "u", "v"), ("y", "v", "w")]).unwrap();
        assert_eq!(multiply(&el(&q, &[("v", 1)]), &el(&q, &[("v", 1)])), el(&q, &[("v", 1)]));
        assert!(multiply(&el(&q, &[("v", 1)]), &el(&q, &[("w", 1)])).is_zero());
        assert_eq!(multiply(&el(&q, &[("x", 1)]), &el(&q, &[("y", 1)])), el(&q, &[("x.y", 1)]));
        assert_eq!(multiply(&el(&q, &[("u", 1), ("v", 1)]), &el(&q, &[("x", 1)])), el(&q, &[("x", 1)]));
        let one = identity(&q);
        let a = el(&q, &[("x.y", 3), ("v", -1)]);
        assert_eq!(multiply(&one, &a), a);
        assert_eq!(multiply(&a, &one), a);
    }

    #[test]
    fn local_units() {
        let q = Quiver::from_parts(&["u", "v"], &[("x", "u", "v")]).unwrap();
        assert_eq!(local_unit(&[el(&q, &[("v", 1)])]), el(&q, &[("v", 1)]));
        let x = el(&q, &[("x", 1)]);
        let e = local_unit(std::slice::from_ref(&x));
        assert_eq!(e, el(&q, &[("u", 1), ("v", 1)]));
        assert_eq!(multiply(&e, &x), x);
        assert_eq!(multiply(&x, &e), x);
        assert!(local_unit(&[]).is_zero());
    }
}
