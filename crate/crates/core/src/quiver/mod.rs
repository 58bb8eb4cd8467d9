//! Quivers, paths and path enumeration.

mod family;
mod predicates;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use family::{max_parallel_arrows, FamilyFacts, FamilyKind, QuiverFamily};
pub(crate) use predicates::reach;
pub use predicates::{
    check_prop32_equivalence, check_recovery_condition, finitely_many_paths_ending_at, finitely_many_paths_starting_at, check_semiperfect_condition, check_unique_path_condition,
    find_simple_cycle, is_acyclic, longest_path_len, Prop32Report, QuiverOrFamily, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertex and arrow labels share one namespace so that a
/// bare label in path syntax is never ambiguous.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    #[serde(skip)]
    names: BTreeMap<String, Name>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Name {
    Vertex(usize),
    Arrow(usize),
}

/// A path, stored as its arrow indices together with the vertices it visits.
///
/// Paths are ordered by length, then by arrow sequence (declaration order of
/// the arrows), then by starting vertex.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    stops: Vec<usize>,
    arrows: Vec<usize>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.stops[0].cmp(&other.stops[0]))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "v{}", self.stops[0])
        } else {
            let a: Vec<String> = self.arrows.iter().map(|a| format!("a{a}")).collect();
            write!(f, "{}", a.join("."))
        }
    }
}

impl Path {
    pub fn vertex(v: usize) -> Path {
        Path {
            stops: vec![v],
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> usize {
        self.stops[0]
    }

    pub fn target(&self) -> usize {
        *self.stops.last().expect("a path visits at least one vertex")
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// Vertices visited, in order (length + 1 entries).
    pub fn stops(&self) -> &[usize] {
        &self.stops
    }

    /// Concatenation `self · q`, defined when `t(self) = s(q)`.
    pub fn compose(&self, q: &Path) -> Option<Path> {
        if self.target() != q.source() {
            return None;
        }
        let mut stops = self.stops.clone();
        stops.extend_from_slice(&q.stops[1..]);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { stops, arrows })
    }

    /// Contiguous piece covering arrows `i..j` (a vertex when `i == j`).
    pub fn slice(&self, i: usize, j: usize) -> Path {
        assert!(i <= j && j <= self.len());
        Path {
            stops: self.stops[i..=j].to_vec(),
            arrows: self.arrows[i..j].to_vec(),
        }
    }

    /// All factorizations `self = q · r`, shortest `q` first.
    pub fn splits(&self) -> Vec<(Path, Path)> {
        (0..=self.len())
            .map(|i| (self.slice(0, i), self.slice(i, self.len())))
            .collect()
    }

    /// All three-way factorizations `self = q · r · s`.
    pub fn splits3(&self) -> Vec<(Path, Path, Path)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..=n {
            for j in i..=n {
                out.push((self.slice(0, i), self.slice(i, j), self.slice(j, n)));
            }
        }
        out
    }

    /// Every contiguous subpath, including the visited vertices, without repeats.
    pub fn subpaths(&self) -> Vec<Path> {
        let n = self.len();
        let mut out: Vec<Path> = (0..=n)
            .flat_map(|i| (i..=n).map(move |j| (i, j)))
            .map(|(i, j)| self.slice(i, j))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Whether `g` occurs in `self` as a contiguous piece.
    pub fn contains_subpath(&self, g: &Path) -> bool {
        if g.is_vertex() {
            return self.stops.contains(&g.source());
        }
        let m = g.len();
        m <= self.len() && (0..=self.len() - m).any(|i| self.arrows[i..i + m] == g.arrows[..] && self.stops[i] == g.source())
    }

    pub fn has_prefix(&self, r: &Path) -> bool {
        r.len() <= self.len() && self.source() == r.source() && self.arrows[..r.len()] == r.arrows[..]
    }
}

/// Paths up to a length bound, sorted, with a flag recording whether the list
/// is all paths of the quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSet {
    pub paths: Vec<Path>,
    pub max_len: usize,
    pub exhaustive: bool,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if self.names.contains_key(label) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        let id = self.vertices.len();
        self.vertices.push(label.to_string());
        self.names.insert(label.to_string(), Name::Vertex(id));
        Ok(id)
    }

    pub fn add_arrow(&mut self, label: &str, source: &str, target: &str) -> Result<usize> {
        let s = self.vertex_id(source)?;
        let t = self.vertex_id(target)?;
        self.add_arrow_ids(label, s, t)
    }

    pub fn add_arrow_ids(&mut self, label: &str, source: usize, target: usize) -> Result<usize> {
        if self.names.contains_key(label) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        for v in [source, target] {
            if v >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            label: label.to_string(),
            source,
            target,
        });
        self.names.insert(label.to_string(), Name::Arrow(id));
        Ok(id)
    }

    /// Builds a quiver from vertex labels and `(label, source, target)` triples.
    pub fn from_parts(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (a, s, t) in arrows {
            q.add_arrow(a, s, t)?;
        }
        Ok(q)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_id(&self, label: &str) -> Result<usize> {
        match self.names.get(label) {
            Some(Name::Vertex(v)) => Ok(*v),
            _ => Err(Error::UnknownVertex(label.to_string())),
        }
    }

    pub fn arrow_id(&self, label: &str) -> Result<usize> {
        match self.names.get(label) {
            Some(Name::Arrow(a)) => Ok(*a),
            _ => Err(Error::UnknownArrow(label.to_string())),
        }
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn vertex_path(&self, v: usize) -> Path {
        assert!(v < self.vertices.len());
        Path::vertex(v)
    }

    pub fn vertex_paths(&self) -> Vec<Path> {
        (0..self.vertices.len()).map(Path::vertex).collect()
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path {
            stops: vec![ar.source, ar.target],
            arrows: vec![a],
        }
    }

    pub fn path_from_arrows(&self, arrows: &[usize]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::ForeignPath("empty arrow sequence".into()));
        };
        if first >= self.arrows.len() {
            return Err(Error::UnknownArrow(format!("#{first}")));
        }
        let mut p = self.arrow_path(first);
        for &a in &arrows[1..] {
            if a >= self.arrows.len() {
                return Err(Error::UnknownArrow(format!("#{a}")));
            }
            p = p.compose(&self.arrow_path(a)).ok_or_else(|| {
                Error::ForeignPath(format!("`{}` does not start where the path ends", self.arrows[a].label))
            })?;
        }
        Ok(p)
    }

    /// Parses `v` (a vertex) or `x.y.z` (composable arrows).
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(Name::Vertex(v)) = self.names.get(text) {
            return Ok(Path::vertex(*v));
        }
        let ids = text
            .split('.')
            .map(|l| self.arrow_id(l.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.path_from_arrows(&ids)
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_vertex() {
            self.vertices[p.source()].clone()
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].label.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Formats a path combination in element syntax, e.g. `3*[x.y] - 1/2*[a]`.
    pub fn format_element(&self, e: &crate::linalg::SparseVector<Path>) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in e.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!("[{}]", self.path_name(p)));
        }
        out
    }

    /// Checks that `p` is a path of this quiver.
    pub fn check_path(&self, p: &Path) -> Result<()> {
        let bad = || Error::ForeignPath(format!("{p:?}"));
        if p.stops.len() != p.arrows.len() + 1 || p.stops.iter().any(|&v| v >= self.vertices.len()) {
            return Err(bad());
        }
        for (i, &a) in p.arrows.iter().enumerate() {
            let ar = self.arrows.get(a).ok_or_else(bad)?;
            if ar.source != p.stops[i] || ar.target != p.stops[i + 1] {
                return Err(bad());
            }
        }
        Ok(())
    }

    /// Path composition with membership checks on both arguments.
    pub fn compose_paths(&self, p: &Path, q: &Path) -> Result<Option<Path>> {
        self.check_path(p)?;
        self.check_path(q)?;
        Ok(p.compose(q))
    }

    fn extend_all(&self, layer: &[Path]) -> Vec<Path> {
        let mut next = Vec::new();
        for p in layer {
            for a in self.out_arrows(p.target()) {
                next.push(p.compose(&self.arrow_path(a)).expect("composable by construction"));
            }
        }
        next
    }

    /// All paths of length at most `max_len`, in path order.
    pub fn enumerate_paths(&self, max_len: usize) -> PathSet {
        let mut all = self.vertex_paths();
        let mut layer = all.clone();
        for _ in 0..max_len {
            layer = self.extend_all(&layer);
            if layer.is_empty() {
                break;
            }
            all.extend(layer.iter().cloned());
        }
        all.sort();
        let exhaustive = longest_path_len(self).is_some_and(|l| l <= max_len);
        PathSet {
            paths: all,
            max_len,
            exhaustive,
        }
    }

    /// Every path, if there are finitely many.
    pub fn all_paths(&self) -> Option<Vec<Path>> {
        let l = longest_path_len(self)?;
        Some(self.enumerate_paths(l).paths)
    }

    /// Paths of length at most `max_len` starting at `v`.
    pub fn paths_from(&self, v: usize, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::vertex(v)];
        let mut layer = out.clone();
        for _ in 0..max_len {
            layer = self.extend_all(&layer);
            if layer.is_empty() {
                break;
            }
            out.extend(layer.iter().cloned());
        }
        out.sort();
        out
    }

    /// Paths of length at most `max_len` ending at `v`.
    pub fn paths_to(&self, v: usize, max_len: usize) -> Vec<Path> {
        self.enumerate_paths(max_len)
            .paths
            .into_iter()
            .filter(|p| p.target() == v)
            .collect()
    }

    pub fn paths_between(&self, u: usize, v: usize, max_len: usize) -> Vec<Path> {
        self.paths_from(u, max_len).into_iter().filter(|p| p.target() == v).collect()
    }

    /// Full subquiver on the vertices selected by `keep`; returns the subquiver
    /// and the map from old vertex ids to new ones.
    pub fn induced(&self, keep: &[bool]) -> (Quiver, Vec<Option<usize>>) {
        let mut q = Quiver::new();
        let mut map = vec![None; self.vertices.len()];
        for (v, label) in self.vertices.iter().enumerate() {
            if keep[v] {
                map[v] = Some(q.add_vertex(label).expect("labels are unique"));
            }
        }
        for ar in &self.arrows {
            if let (Some(s), Some(t)) = (map[ar.source], map[ar.target]) {
                q.add_arrow_ids(&ar.label, s, t).expect("labels are unique");
            }
        }
        (q, map)
    }

    /// Disjoint union; labels of the second quiver get `suffix` appended.
    pub fn disjoint_union(&self, other: &Quiver, suffix: &str) -> Result<Quiver> {
        let mut q = self.clone();
        let offset = q.vertices.len();
        for v in &other.vertices {
            q.add_vertex(&format!("{v}{suffix}"))?;
        }
        for ar in &other.arrows {
            q.add_arrow_ids(&format!("{}{suffix}", ar.label), ar.source + offset, ar.target + offset)?;
        }
        Ok(q)
    }

    /// Restores the label index after deserialization.
    pub fn reindex(&mut self) {
        self.names.clear();
        for (i, v) in self.vertices.iter().enumerate() {
            self.names.insert(v.clone(), Name::Vertex(i));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            self.names.insert(a.label.clone(), Name::Arrow(i));
        }
    }
}
