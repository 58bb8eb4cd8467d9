//! The convolution algebra `(KΓ)*`: functionals on paths.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Eliminator, Scalar, SparseVector};
use crate::quiver::{finitely_many_paths_ending_at, Path, Quiver, QuiverOrFamily};
use crate::Element;

/// Closed-form functionals with infinite support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `γ`: 1 on every path
    AllOnes,
    /// `λ^len(p)` on the paths that wind along `cycle` starting from its first
    /// vertex, 0 on every other path
    Eval { lambda: Scalar, cycle: Path },
    /// 1 on every path that begins with `prefix`
    HasPrefix { prefix: Path },
}

impl Rule {
    pub fn value(&self, p: &Path) -> Scalar {
        match self {
            Rule::AllOnes => Scalar::one(),
            Rule::Eval { lambda, cycle } => {
                let s = cycle.len();
                let follows = p.source() == cycle.source()
                    && (s > 0 || p.is_vertex())
                    && p.arrows().iter().enumerate().all(|(j, a)| *a == cycle.arrows()[j % s.max(1)]);
                if follows {
                    lambda.pow(p.len())
                } else {
                    Scalar::zero()
                }
            }
            Rule::HasPrefix { prefix } => {
                if p.has_prefix(prefix) {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }
        }
    }
}

/// An element of `(KΓ)*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    /// finitely supported; `p ↦` coefficient of `p`
    Finite(SparseVector<Path>),
    Rule(Rule),
}

impl Functional {
    pub fn zero() -> Self {
        Functional::Finite(SparseVector::zero())
    }

    /// The dual basis functional `p*`.
    pub fn dual(p: Path) -> Self {
        Functional::Finite(SparseVector::unit(p))
    }

    pub fn gamma() -> Self {
        Functional::Rule(Rule::AllOnes)
    }

    pub fn eval(lambda: Scalar, cycle: Path) -> Self {
        Functional::Rule(Rule::Eval { lambda, cycle })
    }

    pub fn starts_at(v: usize) -> Self {
        Functional::Rule(Rule::HasPrefix { prefix: Path::vertex(v) })
    }

    pub fn has_prefix(prefix: Path) -> Self {
        Functional::Rule(Rule::HasPrefix { prefix })
    }

    pub fn value(&self, p: &Path) -> Scalar {
        match self {
            Functional::Finite(v) => v.get(p),
            Functional::Rule(r) => r.value(p),
        }
    }

    /// `f(c)` for a finite combination of paths.
    pub fn pair(&self, c: &Element) -> Scalar {
        c.iter().map(|(p, x)| x * &self.value(p)).sum()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Functional::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Functional::Finite(v) if v.is_zero())
    }

    pub fn as_finite(&self) -> Option<&SparseVector<Path>> {
        match self {
            Functional::Finite(v) => Some(v),
            Functional::Rule(_) => None,
        }
    }

    /// The values on `paths`, as a finitely supported vector.
    pub fn restrict<'a>(&self, paths: impl IntoIterator<Item = &'a Path>) -> SparseVector<Path> {
        paths.into_iter().map(|p| (p.clone(), self.value(p))).collect()
    }

    /// Replaces a rule by its table when the quiver has finitely many paths.
    pub fn materialize(&self, quiver: &Quiver) -> Option<Functional> {
        match self {
            Functional::Finite(_) => Some(self.clone()),
            Functional::Rule(_) => quiver.all_paths().map(|ps| Functional::Finite(self.restrict(&ps))),
        }
    }

    pub fn describe(&self, quiver: &Quiver) -> String {
        match self {
            Functional::Finite(v) if v.is_zero() => "dual{}".into(),
            Functional::Finite(v) => {
                let terms: Vec<String> = v.iter().map(|(p, c)| format!("[{}]:{}", quiver.path_name(p), c)).collect();
                format!("dual{{{}}}", terms.join(", "))
            }
            Functional::Rule(Rule::AllOnes) => "rule:gamma".into(),
            Functional::Rule(Rule::Eval { lambda, cycle }) => format!("rule:eval({lambda}, {})", quiver.path_name(cycle)),
            Functional::Rule(Rule::HasPrefix { prefix }) if prefix.is_vertex() => {
                format!("rule:starts-at({})", quiver.path_name(prefix))
            }
            Functional::Rule(Rule::HasPrefix { prefix }) => format!("rule:prefix({})", quiver.path_name(prefix)),
        }
    }
}

/// `(f·g)(p) = Σ_{qr=p} f(q) g(r)` at one path.
pub fn convolve_at(f: &Functional, g: &Functional, p: &Path) -> Scalar {
    p.splits().iter().map(|(q, r)| f.value(q) * g.value(r)).sum()
}

/// The convolution `f·g`. Two finitely supported factors give the exact
/// product; otherwise the result is tabulated on paths of length ≤ `max_len`.
pub fn convolve(f: &Functional, g: &Functional, quiver: &Quiver, max_len: usize) -> Functional {
    if let (Functional::Finite(a), Functional::Finite(b)) = (f, g) {
        let mut out = SparseVector::zero();
        for (q, x) in a.iter() {
            for (r, y) in b.iter() {
                if let Some(qr) = q.compose(r) {
                    out.add_term(qr, x * y);
                }
            }
        }
        return Functional::Finite(out);
    }
    let paths = quiver.enumerate_paths(max_len).paths;
    Functional::Finite(paths.iter().map(|p| (p.clone(), convolve_at(f, g, p))).collect())
}

/// `ψ`: a path combination read as a finitely supported functional.
pub fn psi_embed(a: &Element) -> Functional {
    Functional::Finite(a.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HitSide {
    Left,
    Right,
}

/// `c ⇀ f = f·c` (left) and `f ↼ c = c·f` (right).
pub fn hit_action(c: &Functional, f: &Functional, side: HitSide, quiver: &Quiver, max_len: usize) -> Functional {
    match side {
        HitSide::Left => convolve(f, c, quiver, max_len),
        HitSide::Right => convolve(c, f, quiver, max_len),
    }
}

/// Finite families with `d·f = Σ d(c_i) f_i` for every functional `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCertificate {
    pub elements: Vec<Element>,
    pub functionals: Vec<Functional>,
    /// paths `q` whose dual functional `q*` was substituted for `d`
    pub checked: usize,
    /// largest length checked; `None` when every path was checked
    pub truncation: Option<usize>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rationality {
    Rational {
        certificate: RationalCertificate,
        infinite_support: bool,
    },
    NotRational {
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

impl Rationality {
    pub fn is_rational(&self) -> bool {
        matches!(self, Rationality::Rational { .. })
    }

    pub fn certificate(&self) -> Option<&RationalCertificate> {
        match self {
            Rationality::Rational { certificate, .. } => Some(certificate),
            _ => None,
        }
    }
}

/// `q*·f` evaluated on `paths`.
fn left_translate(q: &Path, f: &Functional, paths: &[Path]) -> SparseVector<Path> {
    paths
        .iter()
        .filter(|p| p.has_prefix(q))
        .map(|p| (p.clone(), f.value(&p.slice(q.len(), p.len()))))
        .collect()
}

/// Checks `q*·f = Σ q*(c_i) f_i` on every path `q` in `duals`, comparing
/// values on `paths`.
pub fn verify_certificate(
    f: &Functional,
    elements: &[Element],
    functionals: &[Functional],
    duals: &[Path],
    paths: &[Path],
) -> bool {
    duals.iter().all(|q| {
        let lhs = left_translate(q, f, paths);
        let mut rhs = SparseVector::zero();
        for (c, fi) in elements.iter().zip(functionals) {
            let k = c.get(q);
            if !k.is_zero() {
                rhs.axpy(&k, &fi.restrict(paths));
            }
        }
        lhs == rhs
    })
}

/// Certificate for a finitely supported `f` whose left translates `r*·f` are
/// nonzero for finitely many paths `r`, all of them in `translators`.
fn finite_certificate(f: &SparseVector<Path>, translators: &[Path]) -> (Vec<Element>, Vec<Functional>) {
    let ff = Functional::Finite(f.clone());
    let support: Vec<Path> = f.labels().cloned().collect();
    let translate = |r: &Path| -> SparseVector<Path> {
        support
            .iter()
            .filter_map(|b| r.compose(b).map(|rb| (rb, ff.value(b))))
            .collect()
    };
    let gs: Vec<SparseVector<Path>> = translators.iter().map(translate).collect();
    let mut chooser = Eliminator::new();
    let mut basis = Vec::new();
    for g in &gs {
        if chooser.push(g) {
            basis.push(g.clone());
        }
    }
    let mut solver = Eliminator::new();
    for h in &basis {
        solver.push(h);
    }
    let mut elements = vec![SparseVector::zero(); basis.len()];
    for (r, g) in translators.iter().zip(&gs) {
        let coeffs = solver.express(g).expect("each translate lies in the span of the chosen ones");
        for (i, a) in coeffs.iter().enumerate() {
            elements[i].add_term(r.clone(), a.clone());
        }
    }
    (elements, basis.into_iter().map(Functional::Finite).collect())
}

fn unit_triangular_obstruction(quiver: &Quiver, vertex: usize) -> Rationality {
    Rationality::NotRational {
        reason: format!(
            "infinitely many paths r end at `{}`, and the translates r*·f are linearly independent",
            quiver.vertex_label(vertex)
        ),
    }
}

/// Decides whether `f` lies in the rational part of `(KΓ)*` for the left
/// hit action, returning a verified certificate when it does.
///
/// Family verdicts use the truncation at `max_len`.
pub fn is_rational_left(f: &Functional, target: QuiverOrFamily<'_>, max_len: usize) -> Result<Rationality> {
    if f.is_zero() {
        return Ok(Rationality::Rational {
            certificate: RationalCertificate {
                elements: vec![],
                functionals: vec![],
                checked: 0,
                truncation: None,
                verified: true,
            },
            infinite_support: false,
        });
    }
    match target {
        QuiverOrFamily::Quiver(quiver) => rational_on_quiver(f, quiver, max_len),
        QuiverOrFamily::Family(family) => {
            let Functional::Rule(Rule::HasPrefix { prefix }) = f else {
                return Ok(Rationality::Unknown {
                    reason: "on infinite families only prefix-indicator functionals are decided".into(),
                });
            };
            let quiver = family.truncate(max_len);
            let start = quiver.vertex_label(prefix.source()).to_string();
            if !family.finitely_many_paths_ending_at(&start) {
                if prefix.is_vertex() {
                    return Ok(unit_triangular_obstruction(&quiver, prefix.source()));
                }
                return Ok(Rationality::Unknown {
                    reason: format!("infinitely many paths end at `{start}`"),
                });
            }
            Ok(prefix_certificate(prefix, &quiver, max_len))
        }
    }
}

/// `d·[prefix π] = Σ_{t(r) = s(π)} d(r) [prefix r·π]`, a finite sum when
/// finitely many paths end at `s(π)`.
fn prefix_certificate(prefix: &Path, quiver: &Quiver, max_len: usize) -> Rationality {
    let paths = quiver.enumerate_paths(max_len).paths;
    let rs: Vec<Path> = paths.iter().filter(|r| r.target() == prefix.source()).cloned().collect();
    let elements: Vec<Element> = rs.iter().map(|r| SparseVector::unit(r.clone())).collect();
    let functionals: Vec<Functional> = rs
        .iter()
        .map(|r| Functional::has_prefix(r.compose(prefix).expect("r ends where the prefix starts")))
        .collect();
    let f = Functional::has_prefix(prefix.clone());
    let verified = verify_certificate(&f, &elements, &functionals, &paths, &paths);
    Rationality::Rational {
        certificate: RationalCertificate {
            elements,
            functionals,
            checked: paths.len(),
            truncation: Some(max_len),
            verified,
        },
        infinite_support: true,
    }
}

fn rational_on_quiver(f: &Functional, quiver: &Quiver, max_len: usize) -> Result<Rationality> {
    let f = match f {
        Functional::Finite(v) => {
            for p in v.labels() {
                quiver.check_path(p)?;
            }
            f.clone()
        }
        Functional::Rule(rule) => match f.materialize(quiver) {
            Some(table) => table,
            None => {
                // every rule is nonzero at the first vertex of its support pattern
                let v = match rule {
                    Rule::AllOnes => (0..quiver.num_vertices()).find(|&v| !finitely_many_paths_ending_at(quiver, v)),
                    Rule::Eval { cycle, .. } => Some(cycle.source()),
                    Rule::HasPrefix { prefix } if prefix.is_vertex() => Some(prefix.source())
                        .filter(|&v| !finitely_many_paths_ending_at(quiver, v)),
                    Rule::HasPrefix { .. } => None,
                };
                return Ok(match v {
                    Some(v) => unit_triangular_obstruction(quiver, v),
                    None => Rationality::Unknown {
                        reason: "infinite-support rule on a quiver with oriented cycles".into(),
                    },
                });
            }
        },
    };
    let table = f.as_finite().expect("materialized");
    let sources: BTreeSet<usize> = table.labels().map(Path::source).collect();
    if let Some(&v) = sources.iter().find(|&&v| !finitely_many_paths_ending_at(quiver, v)) {
        return Ok(unit_triangular_obstruction(quiver, v));
    }
    // paths ending at a source avoid every cycle, so they are shorter than |Γ₀|
    let n = quiver.num_vertices();
    let translators: Vec<Path> = quiver
        .enumerate_paths(n)
        .paths
        .into_iter()
        .filter(|r| sources.contains(&r.target()))
        .collect();
    let (elements, functionals) = finite_certificate(table, &translators);
    let all = quiver.all_paths();
    let (duals, truncation) = match &all {
        Some(ps) => (ps.clone(), None),
        None => (quiver.enumerate_paths(max_len).paths, Some(max_len)),
    };
    let longest = table.labels().map(Path::len).max().unwrap_or(0) + n;
    let values = all.unwrap_or_else(|| quiver.enumerate_paths(max_len.max(longest)).paths);
    let verified = verify_certificate(&f, &elements, &functionals, &duals, &values);
    Ok(Rationality::Rational {
        certificate: RationalCertificate {
            elements,
            functionals,
            checked: duals.len(),
            truncation,
            verified,
        },
        infinite_support: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVerdict {
    pub in_image: bool,
    /// every path, when there are finitely many
    pub support: Option<Vec<Path>>,
    pub reason: String,
}

/// Is `γ` (1 on every path) of the form `ψ(a)`?
pub fn gamma_membership(target: QuiverOrFamily<'_>) -> GammaVerdict {
    match target {
        QuiverOrFamily::Quiver(q) => match q.all_paths() {
            Some(ps) => GammaVerdict {
                in_image: true,
                reason: format!("{} paths, γ = ψ(sum of all paths)", ps.len()),
                support: Some(ps),
            },
            None => GammaVerdict {
                in_image: false,
                support: None,
                reason: "an oriented cycle gives infinitely many paths, while ψ(a) has finite support".into(),
            },
        },
        QuiverOrFamily::Family(f) => {
            let finite = f.facts().finitely_many_paths;
            GammaVerdict {
                in_image: finite,
                support: None,
                reason: if finite {
                    "finitely many paths".into()
                } else {
                    format!("the family `{}` has infinitely many paths", f.kind)
                },
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexivityVerdict {
    pub proper: bool,
    pub reflexive: bool,
    pub explanation: String,
}

/// `K[Γ]` is always proper; it is reflexive exactly when it is finite
/// dimensional.
pub fn reflexivity_verdict(target: QuiverOrFamily<'_>) -> ReflexivityVerdict {
    let (reflexive, explanation) = match target {
        QuiverOrFamily::Quiver(q) => match q.all_paths() {
            Some(ps) => (true, format!("finite dimensional, dimension {}", ps.len())),
            None => (false, "oriented cycle: infinite dimensional".to_string()),
        },
        QuiverOrFamily::Family(f) => {
            let facts = f.facts();
            let why = if !facts.finite_quiver {
                "infinitely many vertices or arrows"
            } else {
                "oriented cycle: infinite dimensional"
            };
            (facts.finite_quiver && facts.acyclic, why.to_string())
        }
    };
    ReflexivityVerdict {
        proper: true,
        reflexive,
        explanation,
    }
}

/// Looks up a functional's paths in `quiver`.
pub fn check_functional(f: &Functional, quiver: &Quiver) -> Result<()> {
    let paths: Vec<&Path> = match f {
        Functional::Finite(v) => v.labels().collect(),
        Functional::Rule(Rule::AllOnes) => vec![],
        Functional::Rule(Rule::Eval { cycle, .. }) => {
            if cycle.is_vertex() || cycle.source() != cycle.target() {
                return Err(Error::Unsupported(format!("`{}` is not a closed path", quiver.path_name(cycle))));
            }
            vec![cycle]
        }
        Functional::Rule(Rule::HasPrefix { prefix }) => vec![prefix],
    };
    paths.into_iter().try_for_each(|p| quiver.check_path(p))
}
