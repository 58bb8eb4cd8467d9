//! Named test objects and seeded random generators.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finite_dual::{StructuredAlgebra, Vector};
use crate::incidence::{fia_algebra, IncidenceElement, Poset};
use crate::linalg::{Scalar, SparseVector};
use crate::quiver::{is_acyclic, FamilyKind, Path, Quiver, QuiverFamily};
use crate::{Element, Tensor};

/// The generator behind every randomized check.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn build(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    Quiver::from_parts(vertices, arrows).expect("corpus quivers are well formed")
}

/// Small named quivers, acyclic ones first.
pub fn quiver_corpus() -> Vec<(&'static str, Quiver)> {
    vec![
        ("point", build(&["v"], &[])),
        ("two-points", build(&["u", "v"], &[])),
        ("arrow", build(&["u", "v"], &[("x", "u", "v")])),
        ("a3", build(&["u", "v", "w"], &[("x", "u", "v"), ("y", "v", "w")])),
        ("a4", build(&["a", "b", "c", "d"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "d")])),
        ("kronecker", build(&["u", "v"], &[("x", "u", "v"), ("y", "u", "v")])),
        ("zigzag", build(&["a", "b", "c"], &[("x", "a", "b"), ("y", "c", "b")])),
        ("fork", build(&["a", "b", "c"], &[("x", "a", "b"), ("y", "a", "c")])),
        (
            "square",
            build(
                &["a", "b", "c", "d"],
                &[("x", "a", "b"), ("y", "a", "c"), ("z", "b", "d"), ("w", "c", "d")],
            ),
        ),
        (
            "triangle",
            build(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "a", "c")]),
        ),
        (
            "kronecker-tail",
            build(&["a", "b", "c"], &[("x", "a", "b"), ("y", "a", "b"), ("z", "b", "c")]),
        ),
        ("loop", build(&["v"], &[("x", "v", "v")])),
        ("two-cycle", build(&["u", "v"], &[("x", "u", "v"), ("y", "v", "u")])),
        (
            "three-cycle",
            build(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")]),
        ),
        ("loop-tail", build(&["u", "v"], &[("x", "u", "v"), ("y", "v", "v")])),
        ("double-loop", build(&["v"], &[("x", "v", "v"), ("y", "v", "v")])),
    ]
}

pub fn acyclic_corpus() -> Vec<(&'static str, Quiver)> {
    quiver_corpus().into_iter().filter(|(_, q)| is_acyclic(q)).collect()
}

pub fn named_quiver(name: &str) -> Option<Quiver> {
    quiver_corpus().into_iter().find(|(n, _)| *n == name).map(|(_, q)| q)
}

/// Every built-in family, with cycles of length 1 to 3.
pub fn family_corpus() -> Vec<QuiverFamily> {
    [
        FamilyKind::Line2,
        FamilyKind::Line1,
        FamilyKind::Loop,
        FamilyKind::Cycle(1),
        FamilyKind::Cycle(2),
        FamilyKind::Cycle(3),
        FamilyKind::MultiArrow,
        FamilyKind::Star51,
        FamilyKind::Star56,
    ]
    .into_iter()
    .map(QuiverFamily::new)
    .collect()
}

fn labelled(labels: &[&str], covers: &[(&str, &str)]) -> Poset {
    let idx = |l: &str| labels.iter().position(|x| *x == l).expect("label exists");
    let covers: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    Poset::from_covers(labels.iter().map(|s| s.to_string()).collect(), &covers).expect("corpus posets are orders")
}

/// Small named posets, up to 8 elements.
pub fn poset_corpus() -> Vec<(String, Poset)> {
    let mut out: Vec<(String, Poset)> = (1..=5).map(|n| (format!("chain{n}"), Poset::chain(n))).collect();
    out.push(("antichain2".into(), Poset::antichain(2)));
    out.push(("antichain3".into(), Poset::antichain(3)));
    out.push(("diamond".into(), Poset::diamond()));
    out.push(("vee".into(), labelled(&["a", "b", "c"], &[("a", "b"), ("a", "c")])));
    out.push(("wedge".into(), labelled(&["a", "b", "c"], &[("a", "c"), ("b", "c")])));
    out.push((
        "pentagon".into(),
        labelled(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        ),
    ));
    out.push((
        "fence".into(),
        labelled(&["a", "b", "c", "d"], &[("a", "b"), ("c", "b"), ("c", "d")]),
    ));
    out.push((
        "bowtie".into(),
        labelled(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]),
    ));
    let subsets: Vec<String> = (0..8u32)
        .map(|m| {
            let s: String = ['x', 'y', 'z'].iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, c)| *c).collect();
            if s.is_empty() {
                "e".into()
            } else {
                s
            }
        })
        .collect();
    let mut covers = Vec::new();
    for a in 0..8usize {
        for i in 0..3 {
            if a >> i & 1 == 0 {
                covers.push((a, a | 1 << i));
            }
        }
    }
    out.push(("boolean3".into(), Poset::from_covers(subsets, &covers).expect("the cube is an order")));
    out
}

/// Every quiver on `1..=max_vertices` vertices (labels `v0, v1, …`) whose
/// arrows form a multiset of at most `max_arrows` ordered vertex pairs.
/// Relabellings are not identified.
pub fn all_quivers(max_vertices: usize, max_arrows: usize) -> Vec<Quiver> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(choice) = stack.pop() {
            out.push(quiver_from_pairs(n, choice.iter().map(|&i| pairs[i])));
            if choice.len() < max_arrows {
                let from = choice.last().copied().unwrap_or(0);
                for i in (from..pairs.len()).rev() {
                    let mut next = choice.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
        }
    }
    out
}

fn quiver_from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Quiver {
    let mut q = Quiver::new();
    for v in 0..n {
        q.add_vertex(&format!("v{v}")).expect("fresh label");
    }
    for (i, (s, t)) in pairs.into_iter().enumerate() {
        q.add_arrow_ids(&format!("a{i}"), s, t).expect("fresh label");
    }
    q
}

/// A random quiver with `1..=max_vertices` vertices and `0..=max_arrows`
/// arrows; loops and parallel arrows allowed.
pub fn random_quiver(rng: &mut impl Rng, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_arrows);
    quiver_from_pairs(n, (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect::<Vec<_>>())
}

/// A random acyclic quiver: every arrow goes from a lower to a higher index.
pub fn random_acyclic_quiver(rng: &mut impl Rng, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = if n == 1 { 0 } else { rng.gen_range(0..=max_arrows) };
    let pairs: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let s = rng.gen_range(0..n - 1);
            (s, rng.gen_range(s + 1..n))
        })
        .collect();
    quiver_from_pairs(n, pairs)
}

/// A random walk of length at most `max_len` from a random vertex.
pub fn random_path(rng: &mut impl Rng, q: &Quiver, max_len: usize) -> Path {
    let mut p = q.vertex_path(rng.gen_range(0..q.num_vertices()));
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let outs: Vec<usize> = q.out_arrows(p.target()).collect();
        let Some(&a) = outs.choose(rng) else { break };
        p = p.compose(&q.arrow_path(a)).expect("the arrow leaves the endpoint");
    }
    p
}

/// A combination of `1..=max_terms` random paths with small coefficients.
pub fn random_element(rng: &mut impl Rng, q: &Quiver, max_len: usize, max_terms: usize) -> Element {
    let terms = rng.gen_range(1..=max_terms);
    let mut e = SparseVector::zero();
    for _ in 0..terms {
        let p = random_path(rng, q, max_len);
        e.add_term(p, Scalar::random_small(rng, 3));
    }
    e
}

pub fn random_tensor(rng: &mut impl Rng, left: &Quiver, right: &Quiver, max_len: usize, max_terms: usize) -> Tensor {
    let terms = rng.gen_range(1..=max_terms);
    let mut t = SparseVector::zero();
    for _ in 0..terms {
        let pair = (random_path(rng, left, max_len), random_path(rng, right, max_len));
        t.add_term(pair, Scalar::random_small(rng, 3));
    }
    t
}

pub fn random_incidence_element(rng: &mut impl Rng, poset: &Poset, max_terms: usize) -> IncidenceElement {
    let intervals = poset.intervals();
    let terms = rng.gen_range(1..=max_terms);
    let mut e = SparseVector::zero();
    for _ in 0..terms {
        if let Some(&i) = intervals.choose(rng) {
            e.add_term(i, Scalar::random_small(rng, 3));
        }
    }
    e
}

/// `K[Γ]/(paths of length > len)` on the basis of paths of length at most
/// `len`, for any finite quiver.
pub fn truncated_path_algebra(q: &Quiver, len: usize) -> (StructuredAlgebra, Vec<Path>) {
    let paths = q.enumerate_paths(len).paths;
    let index: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut products = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        for (j, r) in paths.iter().enumerate() {
            if let Some(k) = p.compose(r).and_then(|pr| index.get(&pr).copied()) {
                products.insert((i, j), Vector::unit(k));
            }
        }
    }
    let idempotents = q.vertex_paths().iter().map(|v| Vector::unit(index[v])).collect();
    let labels = paths.iter().map(|p| q.path_name(p)).collect();
    let a = StructuredAlgebra::new(labels, products, idempotents).expect("truncations of path algebras are algebras");
    (a, paths)
}

/// A random algebra with at most `max_dim` basis elements: a truncated path
/// algebra, an incidence algebra, or a tensor product of two small ones.
pub fn random_algebra(rng: &mut impl Rng, max_dim: usize) -> StructuredAlgebra {
    loop {
        let a = match rng.gen_range(0..3) {
            0 => {
                let q = random_quiver(rng, 3, 3);
                truncated_path_algebra(&q, rng.gen_range(0..=3)).0
            }
            1 => {
                let n = rng.gen_range(1..=4);
                let p = Poset::random(rng, n, 0.5);
                fia_algebra(&p).expect("finite posets give algebras").0
            }
            _ => {
                let q = random_quiver(rng, 2, 1);
                let l = truncated_path_algebra(&q, 1).0;
                let len = rng.gen_range(0..=2);
                let r = truncated_path_algebra(&random_quiver(rng, 1, 1), len).0;
                l.tensor(&r).expect("tensor products of algebras are algebras")
            }
        };
        if a.dim() <= max_dim {
            return a;
        }
    }
}
