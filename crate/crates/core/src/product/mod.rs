//! Product quivers, lattice walks and the embedding of `KΓ ⊗ KΓ'` into
//! `K(Γ×Γ')`; saturation, factorization and the coreflexivity rules.

mod coreflexive;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coalgebra::{is_morphism_on, PathCoalgebra, TensorCoalgebra};
use crate::error::{Error, Result};
use crate::linalg::{rank, Scalar, SparseVector};
use crate::quiver::{Path, Quiver};
use crate::{Element, Tensor};

pub use coreflexive::{
    coideal_quotient_check, coreflexivity_verdict, example56_factorization, star56_subcoalgebra, factor_perp_element,
    saturate_subcoalgebra, CoalgebraDescription, CoidealCheck, Coreflexivity, CoreflexivityVerdict, FactorizationWitness,
    SaturationResult,
};

/// Where an arrow of `Γ×Γ'` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductArrow {
    /// `(x, b)`: the arrow `x` of `Γ` at the vertex `b` of `Γ'`
    Left { arrow: usize, vertex: usize },
    /// `(a, y)`: the vertex `a` of `Γ` with the arrow `y` of `Γ'`
    Right { vertex: usize, arrow: usize },
}

/// `Γ×Γ'` together with its two factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductQuiver {
    pub left: Quiver,
    pub right: Quiver,
    pub quiver: Quiver,
    pub origin: Vec<ProductArrow>,
    left_ids: BTreeMap<(usize, usize), usize>,
    right_ids: BTreeMap<(usize, usize), usize>,
}

/// Vertices `(a, a')` in lexicographic order; then arrows `(a, y)` for every
/// vertex `a` and arrow `y`, then arrows `(x, a')`. Labels are `(a,a')`,
/// `(a,y)` and `(x,a')`.
pub fn product_quiver(left: &Quiver, right: &Quiver) -> Result<ProductQuiver> {
    let (n, m) = (left.num_vertices(), right.num_vertices());
    let mut q = Quiver::new();
    for a in 0..n {
        for b in 0..m {
            q.add_vertex(&format!("({},{})", left.vertex_label(a), right.vertex_label(b)))?;
        }
    }
    let vid = |a: usize, b: usize| a * m + b;
    let mut origin = Vec::new();
    let mut left_ids = BTreeMap::new();
    let mut right_ids = BTreeMap::new();
    for a in 0..n {
        for (y, arr) in right.arrows().iter().enumerate() {
            let id = q.add_arrow_ids(
                &format!("({},{})", left.vertex_label(a), arr.label),
                vid(a, arr.source),
                vid(a, arr.target),
            )?;
            origin.push(ProductArrow::Right { vertex: a, arrow: y });
            right_ids.insert((a, y), id);
        }
    }
    for (x, arr) in left.arrows().iter().enumerate() {
        for b in 0..m {
            let id = q.add_arrow_ids(
                &format!("({},{})", arr.label, right.vertex_label(b)),
                vid(arr.source, b),
                vid(arr.target, b),
            )?;
            origin.push(ProductArrow::Left { arrow: x, vertex: b });
            left_ids.insert((x, b), id);
        }
    }
    Ok(ProductQuiver {
        left: left.clone(),
        right: right.clone(),
        quiver: q,
        origin,
        left_ids,
        right_ids,
    })
}

/// A monotone walk from `(0,0)` to `(n,k)` by unit steps right or up.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeWalk {
    pub points: Vec<(usize, usize)>,
}

impl LatticeWalk {
    pub fn from_steps(steps: &[bool]) -> Self {
        let mut points = vec![(0, 0)];
        let (mut i, mut j) = (0, 0);
        for &right in steps {
            if right {
                i += 1;
            } else {
                j += 1;
            }
            points.push((i, j));
        }
        LatticeWalk { points }
    }

    /// `true` for a step to the right.
    pub fn steps(&self) -> Vec<bool> {
        self.points.windows(2).map(|w| w[1].0 == w[0].0 + 1).collect()
    }

    pub fn end(&self) -> (usize, usize) {
        *self.points.last().expect("a walk has a starting point")
    }

    pub fn describe(&self) -> String {
        self.steps().iter().map(|&r| if r { 'R' } else { 'U' }).collect()
    }
}

/// All walks to `(n, k)`, in lexicographic order of their step words with
/// right before up.
pub fn lattice_walks(n: usize, k: usize) -> Vec<LatticeWalk> {
    fn go(n: usize, k: usize, prefix: &mut Vec<bool>, out: &mut Vec<LatticeWalk>) {
        if n == 0 && k == 0 {
            out.push(LatticeWalk::from_steps(prefix));
            return;
        }
        if n > 0 {
            prefix.push(true);
            go(n - 1, k, prefix, out);
            prefix.pop();
        }
        if k > 0 {
            prefix.push(false);
            go(n, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

impl ProductQuiver {
    pub fn vertex(&self, a: usize, b: usize) -> usize {
        a * self.right.num_vertices() + b
    }

    /// The path of `Γ×Γ'` that follows `p` on right steps and `q` on up
    /// steps: a right step from `(i, j)` uses `(x_{i+1}, b_j)`, an up step
    /// uses `(a_i, y_{j+1})`.
    pub fn walk_path(&self, p: &Path, q: &Path, w: &LatticeWalk) -> Result<Path> {
        self.left.check_path(p)?;
        self.right.check_path(q)?;
        if w.end() != (p.len(), q.len()) {
            return Err(Error::DimensionMismatch(format!(
                "walk ends at {:?}, paths have lengths ({}, {})",
                w.end(),
                p.len(),
                q.len()
            )));
        }
        let (mut i, mut j) = (0, 0);
        let mut arrows = Vec::with_capacity(p.len() + q.len());
        for right in w.steps() {
            if right {
                arrows.push(self.left_ids[&(p.arrows()[i], q.stops()[j])]);
                i += 1;
            } else {
                arrows.push(self.right_ids[&(p.stops()[i], q.arrows()[j])]);
                j += 1;
            }
        }
        if arrows.is_empty() {
            return Ok(Path::vertex(self.vertex(p.source(), q.source())));
        }
        self.quiver.path_from_arrows(&arrows)
    }

    /// The unique `(p, q, w)` with `walk_path(p, q, w) = γ`.
    pub fn decompose(&self, gamma: &Path) -> Result<(Path, Path, LatticeWalk)> {
        self.quiver.check_path(gamma)?;
        let m = self.right.num_vertices();
        let (a0, b0) = (gamma.source() / m, gamma.source() % m);
        let mut px = Vec::new();
        let mut qy = Vec::new();
        let mut steps = Vec::new();
        for &x in gamma.arrows() {
            match self.origin[x] {
                ProductArrow::Left { arrow, .. } => {
                    px.push(arrow);
                    steps.push(true);
                }
                ProductArrow::Right { arrow, .. } => {
                    qy.push(arrow);
                    steps.push(false);
                }
            }
        }
        let p = if px.is_empty() { Path::vertex(a0) } else { self.left.path_from_arrows(&px)? };
        let q = if qy.is_empty() { Path::vertex(b0) } else { self.right.path_from_arrows(&qy)? };
        Ok((p, q, LatticeWalk::from_steps(&steps)))
    }

    /// `W(p, q)`: every walk path of the pair.
    pub fn walk_paths(&self, p: &Path, q: &Path) -> Vec<Path> {
        lattice_walks(p.len(), q.len())
            .iter()
            .map(|w| self.walk_path(p, q, w).expect("walk matches the lengths"))
            .collect()
    }

    /// `α(p⊗q) = Σ_{w ∈ W(p,q)} w`, extended linearly.
    pub fn alpha(&self, t: &Tensor) -> Element {
        t.flat_map(|(p, q)| self.walk_paths(p, q).into_iter().map(|w| (w, Scalar::one())).collect())
    }

    /// `Δα(t) = (α⊗α)Δ(t)` and `εα(t) = ε(t)`.
    pub fn alpha_is_morphism_on(&self, t: &Tensor) -> bool {
        let source = TensorCoalgebra {
            left: &PathCoalgebra { quiver: &self.left },
            right: &PathCoalgebra { quiver: &self.right },
        };
        let target = PathCoalgebra { quiver: &self.quiver };
        is_morphism_on(&source, &target, |(p, q)| self.alpha(&SparseVector::unit((p.clone(), q.clone()))), t)
    }

    /// The path `(p, b_0);(a_n, q)`: all of `p` first, then all of `q`.
    pub fn separating_path(&self, p: &Path, q: &Path) -> Path {
        let steps: Vec<bool> = std::iter::repeat_n(true, p.len())
            .chain(std::iter::repeat_n(false, q.len()))
            .collect();
        self.walk_path(p, q, &LatticeWalk::from_steps(&steps)).expect("lengths match")
    }

    /// For distinct pairs, the functional `(p_j*, q_j*)` is `1` on
    /// `α(p_j⊗q_j)` and `0` on the other images, so the images are
    /// independent. Also checks the rank directly.
    pub fn alpha_injective_on(&self, pairs: &[(Path, Path)]) -> bool {
        let images: Vec<Element> = pairs
            .iter()
            .map(|(p, q)| self.alpha(&SparseVector::unit((p.clone(), q.clone()))))
            .collect();
        let separating = pairs.iter().enumerate().all(|(j, (p, q))| {
            let s = self.separating_path(p, q);
            images
                .iter()
                .enumerate()
                .all(|(i, img)| img.get(&s) == if i == j { Scalar::one() } else { Scalar::zero() })
        });
        let mut distinct = pairs.to_vec();
        distinct.sort();
        distinct.dedup();
        separating && distinct.len() == pairs.len() && rank(&images) == pairs.len()
    }
}

/// `C(n+k, k)`
pub fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{FamilyKind, QuiverFamily};

    fn arrow(s: &str, t: &str, x: &str) -> Quiver {
        Quiver::from_parts(&[s, t], &[(x, s, t)]).unwrap()
    }

    #[test]
    fn product_sizes() {
        let pt = Quiver::from_parts(&["o"], &[]).unwrap();
        let pp = product_quiver(&pt, &pt).unwrap();
        assert_eq!((pp.quiver.num_vertices(), pp.quiver.num_arrows()), (1, 0));
        let lp = QuiverFamily::new(FamilyKind::Loop).truncate(0);
        let ll = product_quiver(&lp, &lp).unwrap();
        assert_eq!((ll.quiver.num_vertices(), ll.quiver.num_arrows()), (1, 2));
        let sq = product_quiver(&arrow("a0", "a1", "x"), &arrow("b0", "b1", "y")).unwrap();
        assert_eq!((sq.quiver.num_vertices(), sq.quiver.num_arrows()), (4, 4));
    }

    #[test]
    fn walk_counts() {
        assert_eq!(lattice_walks(0, 0).len(), 1);
        assert_eq!(lattice_walks(2, 1).len(), 3);
        assert_eq!(lattice_walks(2, 2).len(), 6);
        for n in 0..=6 {
            for k in 0..=6 {
                assert_eq!(lattice_walks(n, k).len() as u128, binomial(n + k, k));
            }
        }
    }

    #[test]
    fn square_walks_and_alpha() {
        let g = arrow("a0", "a1", "x");
        let h = arrow("b0", "b1", "y");
        let sq = product_quiver(&g, &h).unwrap();
        let x = g.arrow_path(0);
        let y = h.arrow_path(0);
        let ru = LatticeWalk::from_steps(&[true, false]);
        let w = sq.walk_path(&x, &y, &ru).unwrap();
        assert_eq!(sq.quiver.path_name(&w), "(x,b0).(a1,y)");
        assert_eq!(sq.decompose(&w).unwrap(), (x.clone(), y.clone(), ru));
        let img = sq.alpha(&SparseVector::unit((x.clone(), y.clone())));
        assert_eq!(sq.quiver.format_element(&img), "[(a0,y).(x,b1)] + [(x,b0).(a1,y)]");
        let v = sq.alpha(&SparseVector::unit((g.vertex_path(0), h.vertex_path(1))));
        assert_eq!(sq.quiver.format_element(&v), "[(a0,b1)]");
        assert!(sq.walk_path(&x, &y, &LatticeWalk::from_steps(&[true])).is_err());
    }

    #[test]
    fn decomposition_round_trip_exhaustive() {
        let g = Quiver::from_parts(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "a", "c")]).unwrap();
        let h = Quiver::from_parts(&["u", "v"], &[("s", "u", "v"), ("t", "u", "v")]).unwrap();
        let pq = product_quiver(&g, &h).unwrap();
        let mut count = 0;
        for gamma in pq.quiver.all_paths().unwrap() {
            let (p, q, w) = pq.decompose(&gamma).unwrap();
            assert_eq!(pq.walk_path(&p, &q, &w).unwrap(), gamma);
            count += 1;
        }
        let mut expected = 0u128;
        for p in g.all_paths().unwrap() {
            for q in h.all_paths().unwrap() {
                expected += binomial(p.len() + q.len(), q.len());
            }
        }
        assert_eq!(count as u128, expected);
    }

    #[test]
    fn alpha_is_an_injective_morphism() {
        let g = Quiver::from_parts(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c")]).unwrap();
        let pq = product_quiver(&g, &g).unwrap();
        let paths = g.all_paths().unwrap();
        let mut pairs = Vec::new();
        for p in &paths {
            for q in &paths {
                pairs.push((p.clone(), q.clone()));
                assert!(pq.alpha_is_morphism_on(&SparseVector::unit((p.clone(), q.clone()))));
            }
        }
        assert!(pq.alpha_injective_on(&pairs));
    }
}
