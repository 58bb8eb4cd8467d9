use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::family::QuiverFamily;
use super::{Path, Quiver};

/// A boolean answer together with a human-readable reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub explanation: String,
}

impl Verdict {
    fn new(holds: bool, explanation: impl Into<String>) -> Self {
        Verdict {
            holds,
            explanation: explanation.into(),
        }
    }
}

/// Vertices in topological order, or `None` if there is an oriented cycle.
pub(crate) fn topological_order(q: &Quiver) -> Option<Vec<usize>> {
    let n = q.num_vertices();
    let mut indeg = vec![0usize; n];
    for a in q.arrows() {
        indeg[a.target] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for a in q.out_arrows(v) {
            let t = q.arrow(a).target;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push_back(t);
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn is_acyclic(q: &Quiver) -> bool {
    topological_order(q).is_some()
}

/// Length of the longest path, or `None` when paths are unbounded.
pub fn longest_path_len(q: &Quiver) -> Option<usize> {
    let order = topological_order(q)?;
    let mut best = vec![0usize; q.num_vertices()];
    for &v in order.iter().rev() {
        best[v] = q.out_arrows(v).map(|a| best[q.arrow(a).target] + 1).max().unwrap_or(0);
    }
    Some(best.into_iter().max().unwrap_or(0))
}

/// A shortest oriented cycle without repeated vertices, as a closed path.
pub fn find_simple_cycle(q: &Quiver) -> Option<Path> {
    let mut best: Option<Path> = None;
    for start in 0..q.num_vertices() {
        // breadth-first search for the shortest return to `start`
        let mut parent: Vec<Option<usize>> = vec![None; q.num_vertices()];
        let mut seen = vec![false; q.num_vertices()];
        let mut queue = VecDeque::new();
        let mut closing = None;
        queue.push_back(start);
        seen[start] = true;
        'bfs: while let Some(v) = queue.pop_front() {
            for a in q.out_arrows(v) {
                let t = q.arrow(a).target;
                if t == start {
                    closing = Some(a);
                    break 'bfs;
                }
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some(a);
                    queue.push_back(t);
                }
            }
        }
        let Some(last) = closing else { continue };
        let mut arrows = vec![last];
        let mut v = q.arrow(last).source;
        while v != start {
            let a = parent[v].expect("visited vertex has a parent");
            arrows.push(a);
            v = q.arrow(a).source;
        }
        arrows.reverse();
        let p = q.path_from_arrows(&arrows).expect("arrows chain by construction");
        if best.as_ref().is_none_or(|b| p.len() < b.len()) {
            best = Some(p);
        }
    }
    best
}

pub(crate) fn reach(q: &Quiver, v: usize, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; q.num_vertices()];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        let next: Vec<usize> = if forward {
            q.out_arrows(u).map(|a| q.arrow(a).target).collect()
        } else {
            q.in_arrows(u).map(|a| q.arrow(a).source).collect()
        };
        for w in next {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Only finitely many paths end at `v`: no oriented cycle can reach it.
pub fn finitely_many_paths_ending_at(q: &Quiver, v: usize) -> bool {
    is_acyclic(&q.induced(&reach(q, v, false)).0)
}

/// Only finitely many paths start at `v`.
pub fn finitely_many_paths_starting_at(q: &Quiver, v: usize) -> bool {
    is_acyclic(&q.induced(&reach(q, v, true)).0)
}

/// No oriented cycles and finitely many arrows between any two vertices.
pub fn check_recovery_condition(target: QuiverOrFamily<'_>) -> Verdict {
    match target {
        QuiverOrFamily::Quiver(q) => match find_simple_cycle(q) {
            None => Verdict::new(true, "no oriented cycles; a finite quiver has finitely many arrows"),
            Some(c) => Verdict::new(false, format!("oriented cycle `{}`", q.path_name(&c))),
        },
        QuiverOrFamily::Family(f) => {
            let facts = f.facts();
            Verdict::new(facts.recovery, facts.recovery_reason)
        }
    }
}

/// Finitely many paths start and end at every vertex.
pub fn check_semiperfect_condition(target: QuiverOrFamily<'_>) -> Verdict {
    match target {
        QuiverOrFamily::Quiver(q) => match find_simple_cycle(q) {
            None => Verdict::new(true, "acyclic finite quiver: path enumeration terminates"),
            Some(c) => Verdict::new(
                false,
                format!(
                    "infinitely many paths start at `{}` along the cycle `{}`",
                    q.vertex_label(c.source()),
                    q.path_name(&c)
                ),
            ),
        },
        QuiverOrFamily::Family(f) => {
            let facts = f.facts();
            Verdict::new(facts.semiperfect, facts.semiperfect_reason)
        }
    }
}

/// At most one path between any two vertices. Requires an acyclic quiver.
pub fn check_unique_path_condition(q: &Quiver) -> Result<Verdict> {
    let Some(l) = longest_path_len(q) else {
        let c = find_simple_cycle(q).expect("cyclic");
        return Err(Error::Cyclic(q.vertex_label(c.source()).to_string()));
    };
    for u in 0..q.num_vertices() {
        let from = q.paths_from(u, l);
        for v in 0..q.num_vertices() {
            let between: Vec<&Path> = from.iter().filter(|p| p.target() == v).collect();
            if between.len() > 1 {
                return Ok(Verdict::new(
                    false,
                    format!(
                        "`{}` and `{}` both run from `{}` to `{}`",
                        q.path_name(between[0]),
                        q.path_name(between[1]),
                        q.vertex_label(u),
                        q.vertex_label(v)
                    ),
                ));
            }
        }
    }
    Ok(Verdict::new(true, "every pair of vertices is joined by at most one path"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop32Report {
    /// no oriented cycles and finitely many arrows between vertices
    pub structural: bool,
    /// every finite vertex set carries finitely many paths inside it
    pub finite_paths_on_subsets: bool,
    pub agree: bool,
    pub subsets_checked: usize,
    /// a vertex set with infinitely many paths inside it, if any
    pub witness_subset: Option<Vec<String>>,
}

/// Compares the structural condition with the condition on finite vertex
/// subsets, the latter by brute force over all subsets.
pub fn check_prop32_equivalence(q: &Quiver) -> Result<Prop32Report> {
    let n = q.num_vertices();
    if n > 20 {
        return Err(Error::Unsupported("subset enumeration limited to 20 vertices".into()));
    }
    let structural = is_acyclic(q);
    let mut witness = None;
    let mut checked = 0usize;
    for mask in 0u32..(1u32 << n) {
        checked += 1;
        let keep: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let (sub, _) = q.induced(&keep);
        // paths through only these vertices are the paths of the full subquiver
        if !is_acyclic(&sub) {
            witness = Some(sub.vertex_labels().to_vec());
            break;
        }
    }
    let finite = witness.is_none();
    Ok(Prop32Report {
        structural,
        finite_paths_on_subsets: finite,
        agree: structural == finite,
        subsets_checked: checked,
        witness_subset: witness,
    })
}

/// Either a concrete finite quiver or one of the built-in infinite families.
#[derive(Clone, Copy, Debug)]
pub enum QuiverOrFamily<'a> {
    Quiver(&'a Quiver),
    Family(&'a QuiverFamily),
}
