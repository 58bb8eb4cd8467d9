use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coalgebra::{comultiply, counit, is_subcoalgebra};
use crate::dual::{convolve_at, Functional};
use crate::error::{Error, Result};
use crate::incidence::{Poset, PosetFamily};
use crate::linalg::{outer_factor, rank1_decompose_2x2, Matrix, Scalar, SparseVector, Subspace};
use crate::quiver::{is_acyclic, reach, FamilyKind, Path, Quiver, QuiverFamily};
use crate::Element;

/// The finite subcoalgebra `W ⊇ V` spanned by all paths between vertices of
/// `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationResult {
    /// vertices on the paths occurring in `V`
    pub s0: Vec<usize>,
    /// paths with both endpoints in `S₀`
    pub p: Vec<Path>,
    /// vertices on the paths of `P`
    pub s: Vec<usize>,
    /// basis of `W`: the paths with both endpoints in `S`
    pub w: Vec<Path>,
    pub v_is_subcoalgebra: bool,
    pub contains_v: bool,
    pub w_is_subcoalgebra: bool,
}

impl SaturationResult {
    pub fn in_s(&self, v: usize) -> bool {
        self.s.binary_search(&v).is_ok()
    }
}

/// Paths whose vertices all lie in `keep`, for an acyclic part.
fn paths_inside(q: &Quiver, keep: &[bool]) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack: Vec<Path> = (0..q.num_vertices()).filter(|&v| keep[v]).map(Path::vertex).collect();
    while let Some(p) = stack.pop() {
        for a in q.out_arrows(p.target()) {
            if keep[q.arrow(a).target] {
                stack.push(p.compose(&q.arrow_path(a)).expect("arrow leaves the end of p"));
            }
        }
        out.push(p);
    }
    out.sort();
    out
}

pub fn saturate_subcoalgebra(v: &[Element], quiver: &Quiver) -> Result<SaturationResult> {
    for e in v {
        for p in e.labels() {
            quiver.check_path(p)?;
        }
    }
    let n = quiver.num_vertices();
    let s0: BTreeSet<usize> = v.iter().flat_map(|e| e.labels().flat_map(|p| p.stops().to_vec())).collect();
    let mut from_s0 = vec![false; n];
    let mut to_s0 = vec![false; n];
    for &u in &s0 {
        for (w, r) in reach(quiver, u, true).into_iter().enumerate() {
            from_s0[w] |= r;
        }
        for (w, r) in reach(quiver, u, false).into_iter().enumerate() {
            to_s0[w] |= r;
        }
    }
    let keep: Vec<bool> = (0..n).map(|w| from_s0[w] && to_s0[w]).collect();
    let (inner, _) = quiver.induced(&keep);
    if !is_acyclic(&inner) {
        let c = crate::quiver::find_simple_cycle(&inner).expect("cyclic");
        return Err(Error::Cyclic(inner.vertex_label(c.source()).to_string()));
    }
    let w = paths_inside(quiver, &keep);
    let p: Vec<Path> = w
        .iter()
        .filter(|p| s0.contains(&p.source()) && s0.contains(&p.target()))
        .cloned()
        .collect();
    let s: Vec<usize> = (0..n).filter(|&x| keep[x]).collect();
    let wspace = Subspace::of_labels(w.iter().cloned());
    let vspace = Subspace::spanned_by(v);
    Ok(SaturationResult {
        s0: s0.into_iter().collect(),
        p,
        s,
        contains_v: wspace.contains_subspace(&vspace),
        v_is_subcoalgebra: is_subcoalgebra(&vspace),
        w_is_subcoalgebra: is_subcoalgebra(&wspace),
        w,
    })
}

/// `η = f₁g₁ + f₂g₂` with all four factors vanishing on `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub eta: Functional,
    pub f1: Functional,
    pub g1: Functional,
    pub f2: Functional,
    pub g2: Functional,
    pub w: Vec<Path>,
    pub truncation: usize,
    /// number of paths on which the identity was checked
    pub checked: usize,
    pub vanish_on_w: bool,
    pub identity_holds: bool,
}

impl FactorizationWitness {
    pub fn verified(&self) -> bool {
        self.vanish_on_w && self.identity_holds
    }

    fn check(mut self, paths: &[Path]) -> Self {
        let fs = [&self.f1, &self.g1, &self.f2, &self.g2];
        self.vanish_on_w = self.w.iter().all(|p| fs.iter().all(|f| f.value(p).is_zero()));
        self.identity_holds = paths
            .iter()
            .all(|p| self.eta.value(p) == convolve_at(&self.f1, &self.g1, p) + convolve_at(&self.f2, &self.g2, p));
        self.checked = paths.len();
        self
    }
}

fn require_perp(eta: &Functional, w: &[Path], quiver: &Quiver) -> Result<()> {
    match w.iter().find(|p| !eta.value(p).is_zero()) {
        Some(p) => Err(Error::NotInPerp(quiver.path_name(p))),
        None => Ok(()),
    }
}

/// Builds `f₁, g₁, f₂, g₂` by induction on path length.
///
/// On `W` everything is zero. At a vertex `v ∉ S`: `f₁(v) = g₂(v) = 1`,
/// `g₁(v) = η(v)`, `f₂(v) = 0`. On a longer path `p` from `u` to `v` with
/// an endpoint outside `S`: `f₁(p) = g₂(p) = 0`, and the remaining value
/// `η(p) − Σ_{qr=p, q,r≠p} (f₁(q)g₁(r) + f₂(q)g₂(r))` goes to `g₁(p)` when
/// `u ∉ S` and to `f₂(p)` otherwise.
pub fn factor_perp_element(eta: &Functional, sat: &SaturationResult, quiver: &Quiver, max_len: usize) -> Result<FactorizationWitness> {
    require_perp(eta, &sat.w, quiver)?;
    let mut paths = quiver.enumerate_paths(max_len).paths;
    paths.sort_by_key(Path::len);
    let mut f1: BTreeMap<Path, Scalar> = BTreeMap::new();
    let mut g1: BTreeMap<Path, Scalar> = BTreeMap::new();
    let mut f2: BTreeMap<Path, Scalar> = BTreeMap::new();
    let mut g2: BTreeMap<Path, Scalar> = BTreeMap::new();
    let get = |m: &BTreeMap<Path, Scalar>, p: &Path| m.get(p).cloned().unwrap_or_else(Scalar::zero);
    for p in &paths {
        let (u, v) = (p.source(), p.target());
        if sat.in_s(u) && sat.in_s(v) {
            continue;
        }
        if p.is_vertex() {
            f1.insert(p.clone(), Scalar::one());
            g2.insert(p.clone(), Scalar::one());
            g1.insert(p.clone(), eta.value(p));
            continue;
        }
        let mut rhs = eta.value(p);
        for (q, r) in p.splits() {
            if q.is_vertex() || r.is_vertex() {
                continue;
            }
            rhs -= &(get(&f1, &q) * get(&g1, &r));
            rhs -= &(get(&f2, &q) * get(&g2, &r));
        }
        if !sat.in_s(u) {
            g1.insert(p.clone(), rhs);
        } else {
            f2.insert(p.clone(), rhs);
        }
    }
    let finite = |m: BTreeMap<Path, Scalar>| Functional::Finite(SparseVector::from_terms(m));
    let witness = FactorizationWitness {
        eta: eta.clone(),
        f1: finite(f1),
        g1: finite(g1),
        f2: finite(f2),
        g2: finite(g2),
        w: sat.w.clone(),
        truncation: max_len,
        checked: 0,
        vanish_on_w: false,
        identity_holds: false,
    };
    Ok(witness.check(&paths))
}

/// The star with one arrow `a → b_k` and one arrow `b_k → c` for `k ≤ big_n`,
/// and the basis of `W_n`: `a`, `c`, and `b_k, x_k, y_k, x_k y_k` for `k ≤ n`.
pub fn star56_subcoalgebra(n: usize, big_n: usize) -> Result<(Quiver, Vec<Path>)> {
    if n > big_n {
        return Err(Error::Unsupported(format!("truncation {big_n} is below n = {n}")));
    }
    let q = QuiverFamily::new(FamilyKind::Star56).truncate(big_n);
    let mut basis = vec![q.vertex_path(q.vertex_id("a")?), q.vertex_path(q.vertex_id("c")?)];
    for k in 1..=n {
        let x = q.arrow_id(&format!("x{k}"))?;
        let y = q.arrow_id(&format!("y{k}"))?;
        basis.push(q.vertex_path(q.vertex_id(&format!("b{k}"))?));
        basis.push(q.arrow_path(x));
        basis.push(q.arrow_path(y));
        basis.push(q.path_from_arrows(&[x, y])?);
    }
    basis.sort();
    Ok((q, basis))
}

/// For each `k > n`, splits `[[η(b_k), η(y_k)], [η(x_k), η(x_k y_k)]]` into
/// two matrices of rank at most one, `(g_i(b_k), g_i(x_k))ᵀ (h_i(b_k), h_i(y_k))`.
/// The returned witness names `g₁, h₁, g₂, h₂` as `f1, g1, f2, g2`.
pub fn example56_factorization(n: usize, big_n: usize, eta: &Functional) -> Result<FactorizationWitness> {
    let (q, basis) = star56_subcoalgebra(n, big_n)?;
    require_perp(eta, &basis, &q)?;
    let mut g = [BTreeMap::new(), BTreeMap::new()];
    let mut h = [BTreeMap::new(), BTreeMap::new()];
    for k in n + 1..=big_n {
        let b = q.vertex_path(q.vertex_id(&format!("b{k}"))?);
        let x = q.arrow_id(&format!("x{k}"))?;
        let y = q.arrow_id(&format!("y{k}"))?;
        let (xp, yp) = (q.arrow_path(x), q.arrow_path(y));
        let xy = q.path_from_arrows(&[x, y])?;
        let m = Matrix::from_rows(vec![
            vec![eta.value(&b), eta.value(&yp)],
            vec![eta.value(&xp), eta.value(&xy)],
        ]);
        let (m1, m2) = rank1_decompose_2x2(&m);
        for (i, mi) in [m1, m2].iter().enumerate() {
            let (u, v) = outer_factor(mi).expect("summands have rank at most one");
            g[i].insert(b.clone(), u[0].clone());
            g[i].insert(xp.clone(), u[1].clone());
            h[i].insert(b.clone(), v[0].clone());
            h[i].insert(yp.clone(), v[1].clone());
        }
    }
    let finite = |m: &BTreeMap<Path, Scalar>| Functional::Finite(SparseVector::from_terms(m.clone()));
    let witness = FactorizationWitness {
        eta: eta.clone(),
        f1: finite(&g[0]),
        g1: finite(&h[0]),
        f2: finite(&g[1]),
        g2: finite(&h[1]),
        w: basis,
        truncation: 2,
        checked: 0,
        vanish_on_w: false,
        identity_holds: false,
    };
    let paths = q.all_paths().expect("the truncated star is acyclic");
    Ok(witness.check(&paths))
}

/// Whether `K·x` is a coideal: `Δ(x) ∈ Kx⊗C + C⊗Kx` and `ε(x) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoidealCheck {
    pub element: String,
    pub delta_in_coideal_sum: bool,
    pub counit_zero: bool,
}

impl CoidealCheck {
    pub fn is_coideal(&self) -> bool {
        self.delta_in_coideal_sum && self.counit_zero
    }
}

/// Terms of `Δ(x)` with a factor outside the supports of `x` and `Δ(x)`
/// cannot be cancelled, so it is enough to test membership in
/// `x⊗S + S⊗x` for the finite set `S` of labels involved.
pub fn coideal_quotient_check(quiver: &Quiver, x: &Element) -> CoidealCheck {
    let d = comultiply(x);
    let mut support: BTreeSet<Path> = x.labels().cloned().collect();
    for (a, b) in d.labels() {
        support.insert(a.clone());
        support.insert(b.clone());
    }
    let mut gens = Vec::new();
    for s in &support {
        let u = SparseVector::unit(s.clone());
        gens.push(crate::linalg::tensor(x, &u));
        gens.push(crate::linalg::tensor(&u, x));
    }
    let span = Subspace::spanned_by(&gens);
    CoidealCheck {
        element: quiver.format_element(x),
        delta_in_coideal_sum: span.contains(&d),
        counit_zero: counit(x).is_zero(),
    }
}

/// A coalgebra handed to the coreflexivity rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoalgebraDescription {
    /// the path coalgebra of a finite quiver
    Quiver(Quiver),
    /// the path coalgebra of a built-in family
    Family(QuiverFamily),
    /// the incidence coalgebra of a finite poset
    Poset(Poset),
    /// the incidence coalgebra of a built-in infinite poset
    PosetFamily(PosetFamily),
    Tensor(Box<CoalgebraDescription>, Box<CoalgebraDescription>),
}

impl CoalgebraDescription {
    pub fn describe(&self) -> String {
        match self {
            CoalgebraDescription::Quiver(q) => format!("path coalgebra of a quiver with {} vertices", q.num_vertices()),
            CoalgebraDescription::Family(f) => format!("path coalgebra of `{}`", f.kind),
            CoalgebraDescription::Poset(p) => format!("incidence coalgebra of a poset with {} elements", p.len()),
            CoalgebraDescription::PosetFamily(f) => format!("incidence coalgebra of `{f}`"),
            CoalgebraDescription::Tensor(a, b) => format!("({}) ⊗ ({})", a.describe(), b.describe()),
        }
    }

    fn finite_dimensional(&self) -> bool {
        match self {
            CoalgebraDescription::Quiver(q) => q.all_paths().is_some(),
            CoalgebraDescription::Family(_) | CoalgebraDescription::PosetFamily(_) => false,
            CoalgebraDescription::Poset(_) => true,
            CoalgebraDescription::Tensor(a, b) => a.finite_dimensional() && b.finite_dimensional(),
        }
    }

    /// A subcoalgebra of a path coalgebra with finitely many paths between
    /// any two vertices.
    fn finitely_many_paths_between(&self) -> bool {
        match self {
            CoalgebraDescription::Quiver(q) => is_acyclic(q),
            CoalgebraDescription::Family(f) => f.facts().finite_paths_between,
            CoalgebraDescription::Poset(_) | CoalgebraDescription::PosetFamily(_) => true,
            CoalgebraDescription::Tensor(_, _) => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coreflexivity {
    Coreflexive,
    NotCoreflexive,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreflexivityVerdict {
    pub verdict: Coreflexivity,
    /// the rules applied, in order
    pub rules: Vec<String>,
    /// vertex and element sets of supported inputs are finite or countable
    pub nonmeasurable: bool,
}

fn verdict(v: Coreflexivity, rules: Vec<String>) -> CoreflexivityVerdict {
    CoreflexivityVerdict {
        verdict: v,
        rules,
        nonmeasurable: true,
    }
}

const FINITE: &str = "finite-dimensional: every finite-dimensional coalgebra is coreflexive";
const COUNTABLE: &str = "the grouplike coradical K^(X) is coreflexive for a nonmeasurable set X; X is finite or countable";

/// Applies the rules in order: finite dimension, the loop, finitely many
/// paths between vertices, the two star families and parallel arrows, and
/// tensor products.
pub fn coreflexivity_verdict(c: &CoalgebraDescription) -> CoreflexivityVerdict {
    use Coreflexivity::*;
    let s = |x: &str| x.to_string();
    if c.finite_dimensional() {
        return verdict(Coreflexive, vec![s(FINITE)]);
    }
    let is_loop = match c {
        CoalgebraDescription::Quiver(q) => q.num_vertices() == 1 && q.num_arrows() == 1,
        CoalgebraDescription::Family(f) => matches!(f.kind, FamilyKind::Loop | FamilyKind::Cycle(1)),
        _ => false,
    };
    if is_loop {
        return verdict(
            Coreflexive,
            vec![s("loop: the dual algebra is K[[X]], whose ideals (X^n) are closed, so every finite-dimensional module is rational")],
        );
    }
    if c.finitely_many_paths_between() {
        let mut rules = Vec::new();
        if matches!(c, CoalgebraDescription::Poset(_) | CoalgebraDescription::PosetFamily(_)) {
            rules.push(s("the incidence coalgebra embeds in the path coalgebra of its Hasse quiver, which has finitely many paths between any two vertices"));
        }
        rules.push(s("finitely many paths between any two vertices: every finite subcoalgebra V lies in a finite W with W⊥W⊥ = W⊥, so coreflexivity reduces to the coradical"));
        rules.push(s(COUNTABLE));
        return verdict(Coreflexive, rules);
    }
    if let CoalgebraDescription::Family(f) = c {
        match f.kind {
            FamilyKind::Star51 => {
                return verdict(
                    NotCoreflexive,
                    vec![
                        s("a - c is skew-primitive, so K(a - c) is a one-dimensional coideal"),
                        s("the quotient by it is a known non-coreflexive coalgebra"),
                        s("a coalgebra is coreflexive iff its quotient by a finite-dimensional coideal is"),
                    ],
                )
            }
            FamilyKind::Star56 => {
                return verdict(
                    Coreflexive,
                    vec![
                        s("every finite subcoalgebra lies in some W_n, and W_n⊥ = W_n⊥·W_n⊥ by splitting each 2x2 block into two rank-one matrices"),
                        s("so coreflexivity reduces to the coradical"),
                        s(COUNTABLE),
                    ],
                )
            }
            FamilyKind::MultiArrow => {
                return verdict(
                    NotCoreflexive,
                    vec![
                        s("a coreflexive coalgebra is locally finite"),
                        s("infinitely many arrows from `a` to `b` make the wedge Ka ∧ Kb infinite-dimensional"),
                    ],
                )
            }
            _ => {}
        }
    }
    if let CoalgebraDescription::Tensor(a, b) = c {
        let (va, vb) = (coreflexivity_verdict(a), coreflexivity_verdict(b));
        if va.verdict == Coreflexive
            && vb.verdict == Coreflexive
            && (a.finite_dimensional() || a.finitely_many_paths_between())
            && (b.finite_dimensional() || b.finitely_many_paths_between())
        {
            let mut rules = vec![s("both factors are coreflexive subcoalgebras of path coalgebras with finitely many paths between any two vertices")];
            rules.push(s("the tensor product embeds in the path coalgebra of the product quiver, which again has finitely many paths between any two vertices"));
            rules.push(s("its coradical is grouplike on a nonmeasurable set, so the tensor product is coreflexive"));
            return verdict(Coreflexive, rules);
        }
        for (v, other) in [(&va, b), (&vb, a)] {
            if v.verdict == NotCoreflexive && !other.is_empty_coalgebra() {
                let mut rules = v.rules.clone();
                rules.push(s("a factor is not coreflexive and embeds in the tensor product (the other factor has a grouplike element)"));
                rules.push(s("subcoalgebras of coreflexive coalgebras are coreflexive"));
                return verdict(NotCoreflexive, rules);
            }
        }
        return verdict(Unknown, vec![s("no rule covers this tensor product")]);
    }
    verdict(Unknown, vec![s("infinitely many paths between some pair of vertices and no specific rule applies")])
}

impl CoalgebraDescription {
    fn is_empty_coalgebra(&self) -> bool {
        match self {
            CoalgebraDescription::Quiver(q) => q.num_vertices() == 0,
            CoalgebraDescription::Poset(p) => p.is_empty(),
            CoalgebraDescription::Tensor(a, b) => a.is_empty_coalgebra() || b.is_empty_coalgebra(),
            _ => false,
        }
    }
}
