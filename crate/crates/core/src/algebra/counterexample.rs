//! Cofinite ideals that contain no cofinite monomial ideal: one built around
//! an oriented cycle, one around infinitely many parallel arrows.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{codimension_of_span, Scalar, SparseVector, Subspace};
use crate::quiver::{find_simple_cycle, FamilyKind, Path, Quiver, QuiverFamily};
use crate::Element;

use super::monomial::{monomial_verdict, MonomialVerdict};
use super::multiply;

/// `q_{n,k}`: the path of length `k` that starts at the `n`-th vertex of the
/// closed path `cycle` and follows it around.
pub fn cycle_path(quiver: &Quiver, cycle: &Path, n: usize, k: usize) -> Path {
    let s = cycle.len();
    let start = cycle.stops()[n % s];
    if k == 0 {
        return Path::vertex(start);
    }
    let arrows: Vec<usize> = (0..k).map(|j| cycle.arrows()[(n + j) % s]).collect();
    quiver.path_from_arrows(&arrows).expect("cycle arrows chain")
}

fn diff(a: Path, b: Path) -> Element {
    SparseVector::from_terms([(a, Scalar::one()), (b, -Scalar::one())])
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleCounterexample {
    pub cycle: String,
    pub s: usize,
    pub truncation: usize,
    /// number of elements `q_{n,ks+i} − q_{n,i}` materialized
    pub s_size: usize,
    /// number of cycle paths `q_{n,k}` materialized
    pub x_size: usize,
    /// paths off the cycle, spanning the monomial part of the ideal
    pub h_size: usize,
    pub identities_checked: usize,
    pub identities_hold: bool,
    pub first_failure: Option<String>,
    /// products of ideal generators with vertices and arrows stay in the ideal
    pub ideal_closed: bool,
    /// `S` together with `q_{n,i}`, `i < s`, spans all cycle paths
    pub residues_span: bool,
    /// no cycle path `q_{m,j}` lies in the ideal
    pub no_cycle_path_in_ideal: bool,
    pub codimension: usize,
    pub monomial: MonomialVerdict,
}

pub(crate) struct CycleIdeal {
    pub generators: Vec<Element>,
    pub s_set: Vec<Element>,
    pub x_set: Vec<Path>,
    pub h: Vec<Path>,
    pub span: Subspace<Path>,
    pub all: Vec<Path>,
}

/// `span{q_{n,ks+i} − λ^{ks} q_{n,i}} + span(paths off the cycle)` on paths of
/// length at most `l`.
pub(crate) fn cycle_ideal(quiver: &Quiver, cycle: &Path, l: usize, lambda: &Scalar) -> CycleIdeal {
    let s = cycle.len();
    let mut s_set = Vec::new();
    let mut x: BTreeSet<Path> = BTreeSet::new();
    for n in 0..s {
        for j in 0..=l {
            x.insert(cycle_path(quiver, cycle, n, j));
        }
        for k in 1..=l / s {
            for i in 0..=l - k * s {
                let w = lambda.pow(k * s);
                s_set.push(SparseVector::from_terms([
                    (cycle_path(quiver, cycle, n, k * s + i), Scalar::one()),
                    (cycle_path(quiver, cycle, n, i), -w),
                ]));
            }
        }
    }
    let all = quiver.enumerate_paths(l).paths;
    let h: Vec<Path> = all.iter().filter(|p| !x.contains(p)).cloned().collect();
    let mut generators = s_set.clone();
    generators.extend(h.iter().cloned().map(SparseVector::unit));
    let span = Subspace::spanned_by(&generators);
    CycleIdeal {
        generators,
        s_set,
        x_set: x.into_iter().collect(),
        h,
        span,
        all,
    }
}

pub(crate) fn max_len(e: &Element) -> usize {
    e.labels().map(Path::len).max().unwrap_or(0)
}

/// Materializes the cycle ideal `I = span(S) + span(P∖X)` on paths of length
/// at most `truncation` and checks its defining properties there.
pub fn build_cycle_counterexample(quiver: &Quiver, truncation: usize, codim_bound: usize) -> Result<CycleCounterexample> {
    let cycle = find_simple_cycle(quiver).ok_or(Error::NoCycle)?;
    let s = cycle.len();
    let l = truncation;
    let ideal = cycle_ideal(quiver, &cycle, l, &Scalar::one());
    let q = |n: usize, k: usize| cycle_path(quiver, &cycle, n, k);
    let s_span = Subspace::spanned_by(&ideal.s_set);

    let mut checked = 0usize;
    let mut failure: Option<String> = None;
    let mut record = |ok: bool, what: String| {
        checked += 1;
        if !ok && failure.is_none() {
            failure = Some(what);
        }
    };
    for n in 0..s {
        for k in 1..=l / s {
            for i in 0..=l - k * s {
                let g = diff(q(n, k * s + i), q(n, i));
                for j in 0..=l - k * s - i {
                    for m in 0..s {
                        let right = multiply(&g, &SparseVector::unit(q(m, j)));
                        let left = multiply(&SparseVector::unit(q(m, j)), &g);
                        if m == (n + i) % s {
                            let want = diff(q(n, k * s + i + j), q(n, i + j));
                            let ok = right == want && s_span.contains(&right);
                            record(ok, format!("right product n={n} k={k} i={i} by q({m},{j})"));
                        } else {
                            record(right.is_zero(), format!("right product n={n} k={k} i={i} by q({m},{j}) should vanish"));
                        }
                        if (m + j) % s == n {
                            let want = diff(q(m, k * s + i + j), q(m, i + j));
                            let ok = left == want && s_span.contains(&left);
                            record(ok, format!("left product q({m},{j}) by n={n} k={k} i={i}"));
                        } else {
                            record(left.is_zero(), format!("left product q({m},{j}) by n={n} k={k} i={i} should vanish"));
                        }
                    }
                }
            }
        }
    }

    // closure under multiplication by the algebra generators (vertices and arrows)
    let mut movers: Vec<Element> = quiver.vertex_paths().into_iter().map(SparseVector::unit).collect();
    movers.extend((0..quiver.num_arrows()).map(|a| SparseVector::unit(quiver.arrow_path(a))));
    let ideal_closed = ideal.generators.iter().all(|g| {
        movers.iter().all(|m| {
            [multiply(g, m), multiply(m, g)]
                .iter()
                .all(|p| max_len(p) > l || ideal.span.contains(p))
        })
    });

    let mut residues = ideal.s_set.clone();
    for n in 0..s {
        for i in 0..s.min(l + 1) {
            residues.push(SparseVector::unit(q(n, i)));
        }
    }
    let residue_span = Subspace::spanned_by(&residues);
    let residues_span = ideal.x_set.iter().all(|p| residue_span.contains(&SparseVector::unit(p.clone())));

    let no_cycle_path_in_ideal = ideal
        .x_set
        .iter()
        .all(|p| !ideal.span.contains(&SparseVector::unit(p.clone())));
    let ambient: BTreeSet<Path> = ideal.all.iter().cloned().collect();
    let codimension = codimension_of_span(ideal.span.basis(), &ambient)?;

    // the search needs enough cycle paths to exceed the bound
    let search_len = l.max(codim_bound);
    let wide = if search_len == l { None } else { Some(cycle_ideal(quiver, &cycle, search_len, &Scalar::one())) };
    let wide_span = wide.as_ref().map_or(&ideal.span, |w| &w.span);
    let monomial = monomial_verdict(quiver, search_len, codim_bound, |p| {
        wide_span.contains(&SparseVector::unit(p.clone()))
    });

    Ok(CycleCounterexample {
        cycle: quiver.path_name(&cycle),
        s,
        truncation: l,
        s_size: ideal.s_set.len(),
        x_size: ideal.x_set.len(),
        h_size: ideal.h.len(),
        identities_checked: checked,
        identities_hold: failure.is_none(),
        first_failure: failure,
        ideal_closed,
        residues_span,
        no_cycle_path_in_ideal,
        codimension,
        monomial,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiArrowCounterexample {
    pub arrows: usize,
    pub ideal_closed: bool,
    pub no_arrow_in_ideal: bool,
    pub codimension: usize,
    /// `x_0` is not a combination of the differences `x_n − x_0`
    pub x0_outside: bool,
}

/// The ideal spanned by `x_n − x_0` on the parallel-arrow family with arrows
/// `x_0 … x_N`.
pub fn build_multiarrow_counterexample(family: &QuiverFamily, n: usize) -> Result<MultiArrowCounterexample> {
    if family.kind != FamilyKind::MultiArrow {
        return Err(Error::Unsupported(format!("expected the multiarrow family, got {}", family.kind)));
    }
    let quiver = family.truncate(n);
    let x = |i: usize| quiver.arrow_path(i);
    let s_set: Vec<Element> = (1..=n).map(|i| diff(x(i), x(0))).collect();
    let span = Subspace::spanned_by(&s_set);
    let mut movers: Vec<Element> = quiver.vertex_paths().into_iter().map(SparseVector::unit).collect();
    movers.extend((0..=n).map(|i| SparseVector::unit(x(i))));
    let ideal_closed = s_set
        .iter()
        .all(|g| movers.iter().all(|m| span.contains(&multiply(g, m)) && span.contains(&multiply(m, g))));
    let no_arrow_in_ideal = (0..=n).all(|i| !span.contains(&SparseVector::unit(x(i))));
    let ambient: BTreeSet<Path> = quiver.enumerate_paths(1).paths.into_iter().collect();
    let codimension = codimension_of_span(&s_set, &ambient)?;
    let x0_outside = crate::linalg::solve_membership(&SparseVector::unit(x(0)), &s_set).is_none();
    Ok(MultiArrowCounterexample {
        arrows: n + 1,
        ideal_closed,
        no_arrow_in_ideal,
        codimension,
        x0_outside,
    })
}
