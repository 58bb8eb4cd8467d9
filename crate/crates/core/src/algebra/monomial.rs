use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::linalg::{SparseVector, Subspace};
use crate::quiver::{Path, Quiver};
use crate::Element;

/// An ideal spanned by paths, materialized up to a length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub generators: Vec<Path>,
    /// all paths of length ≤ `max_len` containing a generator
    pub closure: Vec<Path>,
    pub max_len: usize,
    /// the closure is the whole ideal
    pub exhaustive: bool,
}

impl MonomialIdeal {
    pub fn contains(&self, p: &Path) -> bool {
        self.closure.binary_search(p).is_ok()
    }
}

/// The paths `r·g·s` of length at most `max_len`.
pub fn monomial_closure(generators: &[Path], quiver: &Quiver, max_len: usize) -> MonomialIdeal {
    let paths = quiver.enumerate_paths(max_len);
    let closure = paths
        .paths
        .into_iter()
        .filter(|p| generators.iter().any(|g| p.contains_subpath(g)))
        .collect();
    MonomialIdeal {
        generators: generators.to_vec(),
        closure,
        max_len,
        exhaustive: paths.exhaustive,
    }
}

/// Outcome of searching for a cofinite monomial ideal inside a given subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MonomialVerdict {
    /// The monomial ideal spanned by all paths outside `complement` lies in the
    /// subspace, checked on paths up to `truncation`.
    Yes { complement: Vec<String>, truncation: usize },
    /// As `Yes`, with every path of the quiver checked.
    YesExhaustive { complement: Vec<String> },
    /// Any monomial ideal inside the subspace leaves out at least `forced`
    /// paths of length ≤ `truncation`, more than `bound`.
    NoUpToBound { truncation: usize, bound: usize, forced: usize },
}

impl MonomialVerdict {
    pub fn is_yes(&self) -> bool {
        !matches!(self, MonomialVerdict::NoUpToBound { .. })
    }
}

/// Smallest subpath-closed set containing every path that fails `inside`.
///
/// The paths outside a subpath-closed set span an ideal, and that ideal lies in
/// the target subspace exactly when the set contains every non-member path.
pub fn minimal_monomial_complement(paths: &[Path], inside: impl Fn(&Path) -> bool) -> Vec<Path> {
    let mut out: BTreeSet<Path> = BTreeSet::new();
    for p in paths.iter().filter(|p| !inside(p)) {
        out.extend(p.subpaths());
    }
    out.into_iter().collect()
}

/// Verdict for the subspace described by the membership test `inside`.
pub fn monomial_verdict(
    quiver: &Quiver,
    max_len: usize,
    codim_bound: usize,
    inside: impl Fn(&Path) -> bool,
) -> MonomialVerdict {
    let paths = quiver.enumerate_paths(max_len);
    let e = minimal_monomial_complement(&paths.paths, inside);
    let names: Vec<String> = e.iter().map(|p| quiver.path_name(p)).collect();
    if paths.exhaustive {
        return MonomialVerdict::YesExhaustive { complement: names };
    }
    if e.len() > codim_bound {
        MonomialVerdict::NoUpToBound {
            truncation: max_len,
            bound: codim_bound,
            forced: e.len(),
        }
    } else {
        MonomialVerdict::Yes {
            complement: names,
            truncation: max_len,
        }
    }
}

/// Does the span of `generators` contain a cofinite monomial ideal?
pub fn contains_cofinite_monomial_ideal(
    generators: &[Element],
    quiver: &Quiver,
    max_len: usize,
    codim_bound: usize,
) -> MonomialVerdict {
    let span = Subspace::spanned_by(generators);
    monomial_verdict(quiver, max_len, codim_bound, |p| span.contains(&SparseVector::unit(p.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;

    #[test]
    fn closures() {
        let q = Quiver::from_parts(&["a", "v", "b"], &[("x", "a", "v"), ("y", "v", "b")]).unwrap();
        let v = q.parse_path("v").unwrap();
        let m = monomial_closure(&[v], &q, 3);
        let names: Vec<_> = m.closure.iter().map(|p| q.path_name(p)).collect();
        assert_eq!(names, vec!["v", "x", "y", "x.y"]);
        assert!(m.exhaustive);
        assert!(monomial_closure(&[], &q, 3).closure.is_empty());
        let lp = Quiver::from_parts(&["o"], &[("t", "o", "o")]).unwrap();
        let m = monomial_closure(&[lp.parse_path("t").unwrap()], &lp, 4);
        assert_eq!(m.closure.len(), 4);
        assert!(!m.exhaustive);
    }

    #[test]
    fn cofinite_monomial_search() {
        let q = Quiver::from_parts(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c")]).unwrap();
        let non_vertices: Vec<Element> = q
            .enumerate_paths(2)
            .paths
            .into_iter()
            .filter(|p| !p.is_vertex())
            .map(SparseVector::unit)
            .collect();
        assert_eq!(
            contains_cofinite_monomial_ideal(&non_vertices, &q, 2, 10),
            MonomialVerdict::YesExhaustive {
                complement: vec!["a".into(), "b".into(), "c".into()]
            }
        );
        let everything: Vec<Element> = q.enumerate_paths(2).paths.into_iter().map(SparseVector::unit).collect();
        assert_eq!(
            contains_cofinite_monomial_ideal(&everything, &q, 2, 10),
            MonomialVerdict::YesExhaustive { complement: vec![] }
        );
        // x - y spans no path, so nothing can be left out
        let diff = vec![SparseVector::from_terms([
            (q.parse_path("x").unwrap(), Scalar::one()),
            (q.parse_path("y").unwrap(), -Scalar::one()),
        ])];
        match contains_cofinite_monomial_ideal(&diff, &q, 2, 10) {
            MonomialVerdict::YesExhaustive { complement } => assert_eq!(complement.len(), 6),
            other => panic!("{other:?}"),
        }
    }
}
