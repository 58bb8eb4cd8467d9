//! Quiver representations, right modules over the quiver algebra, local
//! nilpotence, and comodules over the dual of a finite-dimensional algebra.

mod comodule;

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_cycle_counterexample, MonomialVerdict};
use crate::error::{Error, Result};
use crate::linalg::{sparse_to_dense, Matrix, Scalar, SparseVector, Subspace};
use crate::quiver::{FamilyKind, Path, Quiver, QuiverFamily};

pub use comodule::{
    comodule_from_module, hom_space, is_comodule_morphism, module_from_comodule, random_left_module, Coaction,
    ComoduleReport, LeftModule,
};

/// Vector spaces `V_u` (given by dimension) and linear maps
/// `f_a : V_{s(a)} → V_{t(a)}`, as `dim t(a) × dim s(a)` matrices acting on
/// columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() || maps.len() != quiver.num_arrows() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} vertex dimensions and {} maps",
                quiver.num_vertices(),
                quiver.num_arrows()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let want = (dims[a.target], dims[a.source]);
            if (m.nrows(), m.ncols()) != want {
                return Err(Error::DimensionMismatch(format!(
                    "map `{}` is {}x{}, expected {}x{}",
                    a.label,
                    m.nrows(),
                    m.ncols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    /// All maps zero.
    pub fn zero_maps(quiver: Quiver, dims: Vec<usize>) -> Result<Self> {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(*dims.get(a.target).unwrap_or(&0), *dims.get(a.source).unwrap_or(&0)))
            .collect();
        Self::new(quiver, dims, maps)
    }

    /// Dimensions in `0..=max_dim`, entries small rationals, about a third of
    /// them zero.
    pub fn random(quiver: &Quiver, rng: &mut impl Rng, max_dim: usize) -> Self {
        let dims: Vec<usize> = (0..quiver.num_vertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| random_matrix(rng, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            quiver: quiver.clone(),
            dims,
            maps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Position of `V_u` inside `⊕ V_u`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// `f_p = f_{a_n} ⋯ f_{a_1}` for `p = a_1 ⋯ a_n`; the identity on a vertex.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.source()]);
        for &a in p.arrows() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// `x·p` for `x ∈ ⊕ V_u`.
    pub fn act(&self, x: &[Scalar], p: &Path) -> Vec<Scalar> {
        let off = self.offsets();
        let (s, t) = (p.source(), p.target());
        let local = &x[off[s]..off[s] + self.dims[s]];
        let image = self.path_matrix(p).apply(local);
        let mut out = vec![Scalar::zero(); self.total_dim()];
        out[off[t]..off[t] + self.dims[t]].clone_from_slice(&image);
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("rep\n");
        for (v, d) in self.dims.iter().enumerate() {
            out.push_str(&format!("dim {} {d}\n", self.quiver.vertex_label(v)));
        }
        for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
            let rows: Vec<String> = (0..m.nrows())
                .map(|i| m.row(i).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            out.push_str(&format!("map {} {}\n", a.label, rows.join(" ; ")));
        }
        out
    }
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_range(0..3) > 0 {
                m.set(i, j, Scalar::random_small(rng, 2));
            }
        }
    }
    m
}

/// A unital right `K[Γ]`-module on `K^dim`: `x·p = action(p)·x`, with
/// matrices acting on columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleData {
    quiver: Quiver,
    dim: usize,
    vertex_action: Vec<Matrix>,
    arrow_action: Vec<Matrix>,
}

impl ModuleData {
    /// Checks `Σ_v action(v) = 1`, that the vertices act as orthogonal
    /// idempotents and that `action(a) = action(t(a))·action(a)·action(s(a))`.
    /// These relations present `K[Γ]`, so the action extends to all paths.
    pub fn new(quiver: Quiver, dim: usize, vertex_action: Vec<Matrix>, arrow_action: Vec<Matrix>) -> Result<Self> {
        if vertex_action.len() != quiver.num_vertices() || arrow_action.len() != quiver.num_arrows() {
            return Err(Error::InvalidModule("one action matrix per vertex and arrow is required".into()));
        }
        for m in vertex_action.iter().chain(&arrow_action) {
            if (m.nrows(), m.ncols()) != (dim, dim) {
                return Err(Error::DimensionMismatch(format!("action matrices must be {dim}x{dim}")));
            }
        }
        let mut sum = Matrix::zeros(dim, dim);
        for m in &vertex_action {
            sum = sum.add(m);
        }
        if sum != Matrix::identity(dim) {
            return Err(Error::InvalidModule("the vertices do not act with sum 1 (not unital)".into()));
        }
        for (u, e) in vertex_action.iter().enumerate() {
            for (v, f) in vertex_action.iter().enumerate() {
                let want = if u == v { e.clone() } else { Matrix::zeros(dim, dim) };
                if e.mul(f) != want {
                    return Err(Error::InvalidModule(format!(
                        "vertices `{}` and `{}` do not act as orthogonal idempotents",
                        quiver.vertex_label(u),
                        quiver.vertex_label(v)
                    )));
                }
            }
        }
        for (a, m) in quiver.arrows().iter().zip(&arrow_action) {
            if &vertex_action[a.target].mul(m).mul(&vertex_action[a.source]) != m {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` does not map the `{}` part into the `{}` part",
                    a.label,
                    quiver.vertex_label(a.source),
                    quiver.vertex_label(a.target)
                )));
            }
        }
        Ok(ModuleData {
            quiver,
            dim,
            vertex_action,
            arrow_action,
        })
    }

    /// `K[Γ]` acting on itself by right multiplication, on the path basis in
    /// path order. Needs finitely many paths.
    pub fn regular(quiver: &Quiver) -> Result<(Self, Vec<Path>)> {
        let paths = quiver
            .all_paths()
            .ok_or_else(|| Error::Unsupported("the regular module needs finitely many paths".into()))?;
        let n = paths.len();
        let index = |p: &Path| paths.binary_search(p).expect("closed under composition");
        let right_mult = |g: &Path| {
            let mut m = Matrix::zeros(n, n);
            for (j, p) in paths.iter().enumerate() {
                if let Some(pg) = p.compose(g) {
                    m.set(index(&pg), j, Scalar::one());
                }
            }
            m
        };
        let va = quiver.vertex_paths().iter().map(right_mult).collect();
        let aa = (0..quiver.num_arrows()).map(|a| right_mult(&quiver.arrow_path(a))).collect();
        Ok((Self::new(quiver.clone(), n, va, aa)?, paths))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_action(&self, v: usize) -> &Matrix {
        &self.vertex_action[v]
    }

    pub fn arrow_action(&self, a: usize) -> &Matrix {
        &self.arrow_action[a]
    }

    /// Matrix of `x ↦ x·p`; `action(pq) = action(q)·action(p)`.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut m = self.vertex_action[p.source()].clone();
        for &a in p.arrows() {
            m = self.arrow_action[a].mul(&m);
        }
        m
    }
}

/// `V_u = M·u`, with `f_a(x) = x·a`, in the echelon basis of each `M·u`.
pub fn rep_from_module(m: &ModuleData) -> Representation {
    let bases: Vec<Subspace<usize>> = m.vertex_action.iter().map(Matrix::column_space).collect();
    let dims = bases.iter().map(Subspace::dim).collect();
    let maps = m
        .quiver
        .arrows()
        .iter()
        .zip(&m.arrow_action)
        .map(|(a, act)| {
            let (src, tgt) = (&bases[a.source], &bases[a.target]);
            let mut f = Matrix::zeros(tgt.dim(), src.dim());
            for (j, b) in src.basis().iter().enumerate() {
                let coords = tgt.coordinates(&act.apply_sparse(b)).expect("the arrow lands in the target part");
                for (i, c) in coords.into_iter().enumerate() {
                    f.set(i, j, c);
                }
            }
            f
        })
        .collect();
    Representation {
        quiver: m.quiver.clone(),
        dims,
        maps,
    }
}

/// `⊕ V_u` with `x·p = f_p(x)` on `V_{s(p)}` and zero on the other parts.
pub fn module_from_rep(r: &Representation) -> ModuleData {
    let n = r.total_dim();
    let off = r.offsets();
    let vertex_action = (0..r.dims.len())
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            m.put_block(off[v], off[v], &Matrix::identity(r.dims[v]));
            m
        })
        .collect();
    let arrow_action = r
        .quiver
        .arrows()
        .iter()
        .zip(&r.maps)
        .map(|(a, f)| {
            let mut m = Matrix::zeros(n, n);
            m.put_block(off[a.target], off[a.source], f);
            m
        })
        .collect();
    ModuleData {
        quiver: r.quiver.clone(),
        dim: n,
        vertex_action,
        arrow_action,
    }
}

/// Outcome of the subspace chain `U_0 = V`, `U_{L+1} = Σ_a f_a(U_L)`, where
/// `U_L` is spanned by the `f_p(x)` with `len p = L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocNilpReport {
    pub nilpotent: bool,
    /// `dim U_L` for each step computed
    pub chain_dims: Vec<usize>,
    /// first `L` with `U_L = 0`
    pub vanishes_at: Option<usize>,
    /// a cycle `c` with `f_c ≠ 0` on the stable part of the chain
    pub cycle_witness: Option<String>,
}

pub fn is_locally_nilpotent(r: &Representation) -> LocNilpReport {
    let q = &r.quiver;
    let step = |u: &[Subspace<usize>]| -> Vec<Subspace<usize>> {
        let mut next = vec![Subspace::new(); u.len()];
        for (a, f) in q.arrows().iter().zip(&r.maps) {
            next[a.target] = next[a.target].sum(&f.image_of(&u[a.source]));
        }
        next
    };
    let total = |u: &[Subspace<usize>]| u.iter().map(Subspace::dim).sum::<usize>();
    let mut u: Vec<Subspace<usize>> = r.dims.iter().map(|&d| Subspace::of_labels(0..d)).collect();
    let mut chain_dims = vec![total(&u)];
    loop {
        if total(&u) == 0 {
            return LocNilpReport {
                nilpotent: true,
                vanishes_at: Some(chain_dims.len() - 1),
                chain_dims,
                cycle_witness: None,
            };
        }
        let next = step(&u);
        if next == u {
            break;
        }
        u = next;
        chain_dims.push(total(&u));
    }
    LocNilpReport {
        nilpotent: false,
        chain_dims,
        vanishes_at: None,
        cycle_witness: Some(q.path_name(&stable_cycle(r, &u))),
    }
}

/// Walks backwards from an arrow that is nonzero on the stable part `u`,
/// keeping the composite nonzero on `u`, until a vertex repeats.
fn stable_cycle(r: &Representation, u: &[Subspace<usize>]) -> Path {
    let q = &r.quiver;
    let nonzero_on = |m: &Matrix, s: &Subspace<usize>| m.image_of(s).dim() > 0;
    let first = (0..q.num_arrows())
        .find(|&a| nonzero_on(&r.maps[a], &u[q.arrow(a).source]))
        .expect("a nonzero stable part is the image of some arrow");
    let mut composite = r.maps[first].clone();
    let mut stops = vec![q.arrow(first).target, q.arrow(first).source];
    let mut arrows = vec![first];
    loop {
        let here = *stops.last().expect("nonempty");
        if let Some(i) = stops[..stops.len() - 1].iter().position(|&v| v == here) {
            let j = stops.len() - 1;
            let mut forward: Vec<usize> = arrows[i..j].to_vec();
            forward.reverse();
            return q.path_from_arrows(&forward).expect("consecutive arrows chain");
        }
        let b = q
            .in_arrows(here)
            .find(|&b| nonzero_on(&composite.mul(&r.maps[b]), &u[q.arrow(b).source]))
            .expect("the stable part at a vertex is covered by the incoming arrows");
        composite = composite.mul(&r.maps[b]);
        stops.push(q.arrow(b).source);
        arrows.push(b);
    }
}

/// Searches for a cofinite monomial ideal `J` with `x·J = 0`.
///
/// The paths `p` with `x·p ≠ 0` are closed under prefixes, so when none of
/// them has length `max_len` the smallest admissible complement is known
/// exactly and the verdict is exhaustive.
pub fn annihilator_monomial_check(r: &Representation, x: &[Scalar], max_len: usize, codim_bound: usize) -> Result<MonomialVerdict> {
    if x.len() != r.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector has {} coordinates, the representation has dimension {}",
            x.len(),
            r.total_dim()
        )));
    }
    let q = &r.quiver;
    let off = r.offsets();
    let mut failing: Vec<Path> = Vec::new();
    let mut frontier: Vec<(Path, Vec<Scalar>)> = Vec::new();
    for v in 0..q.num_vertices() {
        let local = x[off[v]..off[v] + r.dims[v]].to_vec();
        if local.iter().any(|c| !c.is_zero()) {
            frontier.push((q.vertex_path(v), local));
        }
    }
    let mut truncated = false;
    while let Some((p, y)) = frontier.pop() {
        if p.len() == max_len {
            truncated = true;
        } else {
            for a in q.out_arrows(p.target()) {
                let z = r.maps[a].apply(&y);
                if z.iter().any(|c| !c.is_zero()) {
                    frontier.push((p.compose(&q.arrow_path(a)).expect("arrow leaves the end of p"), z));
                }
            }
        }
        failing.push(p);
    }
    let complement: BTreeSet<Path> = failing.iter().flat_map(Path::subpaths).collect();
    let names: Vec<String> = complement.iter().map(|p| q.path_name(p)).collect();
    Ok(if !truncated {
        MonomialVerdict::YesExhaustive { complement: names }
    } else if complement.len() > codim_bound {
        MonomialVerdict::NoUpToBound {
            truncation: max_len,
            bound: codim_bound,
            forced: complement.len(),
        }
    } else {
        MonomialVerdict::Yes {
            complement: names,
            truncation: max_len,
        }
    })
}

/// Runs [`annihilator_monomial_check`] on every basis vector and reports
/// whether all of them are annihilated by a cofinite monomial ideal.
pub fn annihilators_all_monomial(r: &Representation, max_len: usize, codim_bound: usize) -> bool {
    let n = r.total_dim();
    (0..n).all(|i| {
        let x = sparse_to_dense(&SparseVector::unit(i), n);
        annihilator_monomial_check(r, &x, max_len, codim_bound).is_ok_and(|v| v.is_yes())
    })
}

/// `K[C_n]` modulo the relations `p = s(p)` for the paths `p` of length `n`,
/// as a right module over `K[C_n]`.
#[derive(Clone, Debug)]
pub struct CycleQuotient {
    pub n: usize,
    pub module: ModuleData,
    /// `q_{m,i}` at index `m·n + i`: the path of length `i < n` from vertex `m`
    pub basis: Vec<Path>,
    /// the quotient multiplication on the basis is associative
    pub associative: bool,
    /// `Σ_m q_{m,0}` is a two-sided unit
    pub unital: bool,
    /// every path of length `n` acts as its starting vertex
    pub relations_hold: bool,
    /// stripping prefixes and stripping suffixes reduce every path of length
    /// `< 3n` to the same basis path, and the action of such a path is right
    /// multiplication by its reduction
    pub reductions_agree: bool,
    /// does the ideal of relations contain a cofinite monomial ideal
    pub monomial: MonomialVerdict,
}

pub fn cycle_quotient_module(n: usize) -> Result<CycleQuotient> {
    if n == 0 {
        return Err(Error::Unsupported("the cycle needs at least one vertex".into()));
    }
    let quiver = QuiverFamily::new(FamilyKind::Cycle(n)).truncate(0);
    let q = |m: usize, i: usize| -> Path {
        let arrows: Vec<usize> = (0..i).map(|j| (m + j) % n).collect();
        if arrows.is_empty() {
            Path::vertex(m)
        } else {
            quiver.path_from_arrows(&arrows).expect("cycle arrows chain")
        }
    };
    let basis: Vec<Path> = (0..n).flat_map(|m| (0..n).map(move |i| (m, i))).map(|(m, i)| q(m, i)).collect();
    let index = |p: &Path| p.source() * n + p.len() % n;
    let strip_prefix = |p: &Path| {
        let mut p = p.clone();
        while p.len() >= n {
            p = p.slice(n, p.len());
        }
        p
    };
    let strip_suffix = |p: &Path| {
        let mut p = p.clone();
        while p.len() >= n {
            p = p.slice(0, p.len() - n);
        }
        p
    };
    let product = |i: usize, j: usize| -> Option<usize> { basis[i].compose(&basis[j]).map(|p| index(&strip_prefix(&p))) };
    let d = n * n;
    let mut associative = true;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let left = product(i, j).and_then(|ij| product(ij, k));
                let right = product(j, k).and_then(|jk| product(i, jk));
                associative &= left == right;
            }
        }
    }
    let units: Vec<usize> = (0..n).map(|m| m * n).collect();
    let unital = (0..d).all(|i| {
        let left: Vec<usize> = units.iter().filter_map(|&e| product(e, i)).collect();
        let right: Vec<usize> = units.iter().filter_map(|&e| product(i, e)).collect();
        left == [i] && right == [i]
    });
    let right_mult = |g: &Path| {
        let mut m = Matrix::zeros(d, d);
        for (j, b) in basis.iter().enumerate() {
            if let Some(bg) = b.compose(g) {
                m.set(index(&strip_prefix(&bg)), j, Scalar::one());
            }
        }
        m
    };
    let va = quiver.vertex_paths().iter().map(right_mult).collect();
    let aa = (0..n).map(|a| right_mult(&quiver.arrow_path(a))).collect();
    let module = ModuleData::new(quiver.clone(), d, va, aa)?;
    let relations_hold = (0..n).all(|m| module.path_action(&q(m, n)) == module.path_action(&Path::vertex(m)));
    let reductions_agree = quiver.enumerate_paths(3 * n - 1).paths.iter().all(|p| {
        let r = strip_prefix(p);
        r == strip_suffix(p) && module.path_action(p) == right_mult(&r)
    });
    let monomial = build_cycle_counterexample(&quiver, 4 * n, d)?.monomial;
    Ok(CycleQuotient {
        n,
        module,
        basis,
        associative,
        unital,
        relations_hold,
        reductions_agree,
        monomial,
    })
}
