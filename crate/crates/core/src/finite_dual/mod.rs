//! Finite duals of finite-dimensional algebras with enough idempotents, and
//! the embedding `θ: KΓ → K[Γ]⁰`.

mod algebra;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use algebra::{StructuredAlgebra, Vector};

use crate::algebra::counterexample::{cycle_ideal, cycle_path, max_len};
use crate::algebra::{minimal_monomial_complement, monomial_verdict, multiply, MonomialVerdict};
use crate::coalgebra::{is_coassociative_on, is_morphism_on, satisfies_counit_on, Coalgebra, PathCoalgebra};
use crate::dual::{Functional, Rule};
use crate::error::{Error, Result};
use crate::linalg::{codimension_of_span, kernel, rank, Scalar, SparseVector, Subspace};
use crate::quiver::{find_simple_cycle, Path, Quiver, QuiverOrFamily};
use crate::Element;

/// The coalgebra `A⁰ = A*` of a finite-dimensional algebra on the dual basis
/// `b_i*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCoalgebra {
    delta: Vec<SparseVector<(usize, usize)>>,
    epsilon: Vec<Scalar>,
}

impl Coalgebra for DualCoalgebra {
    type Label = usize;

    fn delta(&self, b: &usize) -> SparseVector<(usize, usize)> {
        self.delta[*b].clone()
    }

    fn epsilon(&self, b: &usize) -> Scalar {
        self.epsilon[*b].clone()
    }
}

impl DualCoalgebra {
    pub fn dim(&self) -> usize {
        self.epsilon.len()
    }

    /// Coassociativity and both counit laws on every dual basis element.
    pub fn verify(&self) -> bool {
        (0..self.dim()).all(|k| {
            let v = SparseVector::unit(k);
            is_coassociative_on(self, &v) && satisfies_counit_on(self, &v)
        })
    }
}

/// `Δ⁰(b_k*) = Σ c^k_{ij} b_i*⊗b_j*` where `b_i b_j = Σ_k c^k_{ij} b_k`, and
/// `ε⁰(f) = Σ_α f(e_α)`.
pub fn dual_coalgebra(a: &StructuredAlgebra) -> DualCoalgebra {
    let n = a.dim();
    let mut delta = vec![SparseVector::zero(); n];
    for i in 0..n {
        for j in 0..n {
            for (&k, c) in a.basis_product(i, j).iter() {
                delta[k].add_term((i, j), c.clone());
            }
        }
    }
    let one = a.unit();
    let epsilon = (0..n).map(|k| one.get(&k)).collect();
    DualCoalgebra { delta, epsilon }
}

/// A two-sided ideal of finite codimension inside `ker f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealWitness {
    /// reduced basis of the ideal
    pub ideal: Vec<Vector>,
    pub codimension: usize,
    /// number of the distinguished idempotents not in the ideal
    pub idempotents_outside: usize,
    pub vanishes: bool,
    pub two_sided: bool,
}

fn apply(f: &Vector, a: &Vector) -> Scalar {
    f.pair(a)
}

/// The largest two-sided ideal contained in `ker f`, where `f` is given by
/// its values `f(b_i)`.
pub fn finite_dual_witness(a: &StructuredAlgebra, f: &Vector) -> IdealWitness {
    let n = a.dim();
    let basis: Vec<Vector> = (0..n).map(Vector::unit).collect();
    // a ↦ f(b_x a b_y) for all x, y; with the unit these include f(a)
    let columns: Vec<SparseVector<(usize, usize)>> = (0..n)
        .map(|k| {
            let mut col = SparseVector::zero();
            for x in 0..n {
                let xk = a.mul(&basis[x], &basis[k]);
                for (y, by) in basis.iter().enumerate() {
                    col.add_term((x, y), apply(f, &a.mul(&xk, by)));
                }
            }
            col
        })
        .collect();
    let ideal = Subspace::spanned_by(&kernel(&columns).iter().map(|c| dense(c)).collect::<Vec<_>>());
    ideal_report(a, f, &ideal)
}

fn dense(c: &[Scalar]) -> Vector {
    c.iter().enumerate().map(|(i, x)| (i, x.clone())).collect()
}

fn ideal_report(a: &StructuredAlgebra, f: &Vector, ideal: &Subspace<usize>) -> IdealWitness {
    let n = a.dim();
    let basis: Vec<Vector> = (0..n).map(Vector::unit).collect();
    let two_sided = ideal
        .basis()
        .iter()
        .all(|g| basis.iter().all(|b| ideal.contains(&a.mul(b, g)) && ideal.contains(&a.mul(g, b))));
    IdealWitness {
        ideal: ideal.basis().to_vec(),
        codimension: n - ideal.dim(),
        idempotents_outside: a.idempotents().iter().filter(|e| !ideal.contains(e)).count(),
        vanishes: ideal.basis().iter().all(|g| apply(f, g).is_zero()),
        two_sided,
    }
}

/// Several characterizations of `f ∈ A⁰`, computed separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteDualCharacterizations {
    /// codimension of the largest two-sided ideal in `ker f`
    pub two_sided_codim: usize,
    /// codimension of the largest left ideal in `ker f`
    pub left_ideal_codim: usize,
    /// codimension of the largest right ideal in `ker f`
    pub right_ideal_codim: usize,
    /// `dim(A ⇀ f)`, where `(a ⇀ f)(x) = f(xa)`
    pub left_orbit_dim: usize,
    /// `dim(f ↼ A)`, where `(f ↼ a)(x) = f(ax)`
    pub right_orbit_dim: usize,
    pub agree: bool,
}

pub fn finite_dual_characterizations(a: &StructuredAlgebra, f: &Vector) -> FiniteDualCharacterizations {
    let n = a.dim();
    let basis: Vec<Vector> = (0..n).map(Vector::unit).collect();
    let value = |x: &Vector, y: &Vector| apply(f, &a.mul(x, y));
    // kernels of a ↦ (f(b_x a))_x and a ↦ (f(a b_x))_x
    let left_cols: Vec<Vector> = (0..n).map(|k| (0..n).map(|x| (x, value(&basis[x], &basis[k]))).collect()).collect();
    let right_cols: Vec<Vector> = (0..n).map(|k| (0..n).map(|x| (x, value(&basis[k], &basis[x]))).collect()).collect();
    let left_ideal_codim = n - kernel(&left_cols).len();
    let right_ideal_codim = n - kernel(&right_cols).len();
    let left_orbit: Vec<Vector> = basis
        .iter()
        .map(|b| (0..n).map(|x| (x, value(&basis[x], b))).collect())
        .collect();
    let right_orbit: Vec<Vector> = basis
        .iter()
        .map(|b| (0..n).map(|x| (x, value(b, &basis[x]))).collect())
        .collect();
    let left_orbit_dim = rank(&left_orbit);
    let right_orbit_dim = rank(&right_orbit);
    let two = finite_dual_witness(a, f);
    FiniteDualCharacterizations {
        two_sided_codim: two.codimension,
        left_ideal_codim,
        right_ideal_codim,
        left_orbit_dim,
        right_orbit_dim,
        agree: left_ideal_codim == left_orbit_dim
            && right_ideal_codim == right_orbit_dim
            && two.codimension >= left_ideal_codim.max(right_ideal_codim)
            && two.vanishes
            && two.two_sided,
    }
}

/// `θ(c)` with the complement of a monomial ideal in its kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaImage {
    pub functional: Functional,
    /// subpaths of the support paths; the other paths span an ideal of
    /// codimension `complement.len()` on which `θ(c)` vanishes
    pub complement: Vec<Path>,
}

pub fn theta_embed(c: &Element, quiver: &Quiver) -> Result<ThetaImage> {
    for p in c.labels() {
        quiver.check_path(p)?;
    }
    let support: Vec<Path> = c.labels().cloned().collect();
    Ok(ThetaImage {
        functional: Functional::Finite(c.clone()),
        complement: minimal_monomial_complement(&support, |_| false),
    })
}

/// A cofinite ideal in the kernel of an evaluation functional along a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalWitness {
    pub cycle: String,
    pub lambda: Scalar,
    /// ideal generators: `q_{n,s} − λ^s v_n` and the vertices and arrows off the cycle
    pub generators: Vec<String>,
    pub truncation: usize,
    /// codimension of the ideal within paths of length ≤ `truncation`
    pub codimension: usize,
    pub vanishes: bool,
    pub ideal_closed: bool,
    pub generators_in_span: bool,
}

fn eval_witness(quiver: &Quiver, lambda: &Scalar, cycle: &Path, truncation: usize) -> Result<EvalWitness> {
    let s = cycle.len();
    let l = truncation.max(s);
    let ideal = cycle_ideal(quiver, cycle, l, lambda);
    let f = Functional::eval(lambda.clone(), cycle.clone());

    let on_cycle: BTreeSet<usize> = cycle.arrows().iter().copied().collect();
    let cycle_vertices: BTreeSet<usize> = cycle.stops().iter().copied().collect();
    let mut generators: Vec<Element> = (0..s)
        .map(|n| {
            SparseVector::from_terms([
                (cycle_path(quiver, cycle, n, s), Scalar::one()),
                (cycle_path(quiver, cycle, n, 0), -lambda.pow(s)),
            ])
        })
        .collect();
    generators.extend(
        (0..quiver.num_vertices())
            .filter(|v| !cycle_vertices.contains(v))
            .map(|v| SparseVector::unit(Path::vertex(v))),
    );
    generators.extend(
        (0..quiver.num_arrows())
            .filter(|a| !on_cycle.contains(a))
            .map(|a| SparseVector::unit(quiver.arrow_path(a))),
    );

    let mut movers: Vec<Element> = quiver.vertex_paths().into_iter().map(SparseVector::unit).collect();
    movers.extend((0..quiver.num_arrows()).map(|a| SparseVector::unit(quiver.arrow_path(a))));
    let ideal_closed = ideal.generators.iter().all(|g| {
        movers
            .iter()
            .all(|m| [multiply(g, m), multiply(m, g)].iter().all(|p| max_len(p) > l || ideal.span.contains(p)))
    });
    let ambient: BTreeSet<Path> = ideal.all.iter().cloned().collect();
    Ok(EvalWitness {
        cycle: quiver.path_name(cycle),
        lambda: lambda.clone(),
        generators: generators.iter().map(|g| quiver.format_element(g)).collect(),
        truncation: l,
        codimension: codimension_of_span(ideal.span.basis(), &ambient)?,
        vanishes: ideal.span.basis().iter().all(|g| f.pair(g).is_zero()),
        ideal_closed,
        generators_in_span: generators.iter().all(|g| ideal.span.contains(g)),
    })
}

/// Evidence that a functional on `K[Γ]` lies in the finite dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "witness", rename_all = "snake_case")]
pub enum FiniteDualVerdict {
    /// the paths outside `complement` span a cofinite ideal in the kernel
    Monomial { complement: Vec<String> },
    Eval(EvalWitness),
}

/// Finite-dual membership for a finitely supported functional or an
/// evaluation along a cycle.
pub fn is_in_finite_dual(f: &Functional, quiver: &Quiver, truncation: usize) -> Result<FiniteDualVerdict> {
    crate::dual::check_functional(f, quiver)?;
    match f {
        Functional::Finite(v) => {
            let img = theta_embed(v, quiver)?;
            Ok(FiniteDualVerdict::Monomial {
                complement: img.complement.iter().map(|p| quiver.path_name(p)).collect(),
            })
        }
        Functional::Rule(Rule::Eval { lambda, cycle }) => {
            let simple = cycle.stops()[..cycle.len()].iter().collect::<BTreeSet<_>>().len() == cycle.len();
            if !simple {
                return Err(Error::Unsupported("evaluation along a self-intersecting closed path".into()));
            }
            Ok(FiniteDualVerdict::Eval(eval_witness(quiver, lambda, cycle, truncation)?))
        }
        Functional::Rule(_) => match f.materialize(quiver) {
            Some(table) => is_in_finite_dual(&table, quiver, truncation),
            None => Err(Error::Unsupported(format!(
                "finite-dual membership of {} on a quiver with oriented cycles",
                f.describe(quiver)
            ))),
        },
    }
}

/// Does `ker f` contain a cofinite monomial ideal?
///
/// Finitely supported functionals are answered exactly; rules are searched on
/// paths of length ≤ `max(max_len, codim_bound)`.
pub fn is_in_theta_image(
    f: &Functional,
    target: QuiverOrFamily<'_>,
    max_len: usize,
    codim_bound: usize,
) -> Result<MonomialVerdict> {
    let (quiver, len) = match target {
        QuiverOrFamily::Quiver(q) => (q.clone(), max_len.max(codim_bound)),
        QuiverOrFamily::Family(fam) => (fam.truncate(max_len), max_len.max(codim_bound)),
    };
    if let Functional::Finite(v) = f {
        let img = theta_embed(v, &quiver)?;
        return Ok(MonomialVerdict::YesExhaustive {
            complement: img.complement.iter().map(|p| quiver.path_name(p)).collect(),
        });
    }
    crate::dual::check_functional(f, &quiver)?;
    Ok(monomial_verdict(&quiver, len, codim_bound, |p| f.value(p).is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaIsoReport {
    pub iso: bool,
    pub acyclic: bool,
    /// `dim KΓ`, `dim K[Γ]*` and `dim θ(KΓ)` when finite
    pub dim_coalgebra: Option<usize>,
    pub dim_dual: Option<usize>,
    pub dim_image: Option<usize>,
    pub injective: bool,
    pub coalgebra_morphism: Option<bool>,
    /// a functional in `K[Γ]⁰` outside the image of `θ`
    pub witness: Option<String>,
    pub witness_in_finite_dual: Option<EvalWitness>,
    pub witness_monomial: Option<MonomialVerdict>,
}

/// Is `θ: KΓ → K[Γ]⁰` onto?
pub fn theta_iso_check(quiver: &Quiver, max_len: usize, codim_bound: usize) -> Result<ThetaIsoReport> {
    match StructuredAlgebra::from_quiver(quiver) {
        Ok((a, paths)) => {
            let index = |p: &Path| paths.binary_search(p).expect("every path is a basis element");
            // θ(p) in the dual basis of K[Γ]*
            let images: Vec<Vector> = paths.iter().map(|p| Vector::unit(index(p))).collect();
            let dim_image = rank(&images);
            let dual = dual_coalgebra(&a);
            let pc = PathCoalgebra { quiver };
            let morphism = dual.verify()
                && paths
                    .iter()
                    .all(|p| is_morphism_on(&pc, &dual, |q| Vector::unit(index(q)), &SparseVector::unit(p.clone())));
            Ok(ThetaIsoReport {
                iso: dim_image == a.dim() && morphism,
                acyclic: true,
                dim_coalgebra: Some(paths.len()),
                dim_dual: Some(a.dim()),
                dim_image: Some(dim_image),
                injective: dim_image == paths.len(),
                coalgebra_morphism: Some(morphism),
                witness: None,
                witness_in_finite_dual: None,
                witness_monomial: None,
            })
        }
        Err(Error::Cyclic(_)) => {
            let cycle = find_simple_cycle(quiver).ok_or(Error::NoCycle)?;
            let f = Functional::eval(Scalar::one(), cycle.clone());
            let witness = eval_witness(quiver, &Scalar::one(), &cycle, max_len)?;
            let monomial = is_in_theta_image(&f, QuiverOrFamily::Quiver(quiver), max_len, codim_bound)?;
            Ok(ThetaIsoReport {
                iso: false,
                acyclic: false,
                dim_coalgebra: None,
                dim_dual: None,
                dim_image: None,
                injective: true,
                coalgebra_morphism: None,
                witness: Some(f.describe(quiver)),
                witness_in_finite_dual: Some(witness),
                witness_monomial: Some(monomial),
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::quiver::{FamilyKind, QuiverFamily};

    fn arrow() -> Quiver {
        Quiver::from_parts(&["u", "v"], &[("x", "u", "v")]).unwrap()
    }

    #[test]
    fn one_dimensional_dual() {
        let a = StructuredAlgebra::new(
            vec!["e".into()],
            BTreeMap::from([((0, 0), Vector::unit(0))]),
            vec![Vector::unit(0)],
        )
        .unwrap();
        let d = dual_coalgebra(&a);
        assert_eq!(d.delta(&0), SparseVector::unit((0, 0)));
        assert_eq!(d.epsilon(&0), Scalar::one());
        assert!(d.verify());
    }

    #[test]
    fn dual_of_single_arrow() {
        let q = arrow();
        let (a, _) = StructuredAlgebra::from_quiver(&q).unwrap();
        let d = dual_coalgebra(&a);
        let (u, v, x) = (a.index_of("u").unwrap(), a.index_of("v").unwrap(), a.index_of("x").unwrap());
        assert_eq!(d.delta(&x), SparseVector::from_terms([((u, x), Scalar::one()), ((x, v), Scalar::one())]));
        assert_eq!(d.epsilon(&u), Scalar::one());
        assert_eq!(d.epsilon(&x), Scalar::zero());
        assert!(d.verify());
    }

    #[test]
    fn theta_complements() {
        let q = Quiver::from_parts(&["u", "v", "w"], &[("x", "u", "v"), ("y", "v", "w")]).unwrap();
        let img = theta_embed(&SparseVector::unit(q.parse_path("x.y").unwrap()), &q).unwrap();
        assert_eq!(img.complement.len(), 6);
        let img = theta_embed(&SparseVector::unit(q.parse_path("v").unwrap()), &q).unwrap();
        assert_eq!(img.complement, vec![q.parse_path("v").unwrap()]);
    }

    #[test]
    fn eval_on_the_loop() {
        let lp = QuiverFamily::new(FamilyKind::Loop).truncate(0);
        let x = lp.parse_path("x").unwrap();
        let FiniteDualVerdict::Eval(w) = is_in_finite_dual(&Functional::eval(Scalar::from(2), x.clone()), &lp, 12).unwrap()
        else {
            panic!()
        };
        assert_eq!(w.generators, vec!["-2*[v] + [x]".to_string()]);
        assert_eq!(w.codimension, 1);
        assert!(w.vanishes && w.ideal_closed && w.generators_in_span);
        let FiniteDualVerdict::Eval(w) = is_in_finite_dual(&Functional::eval(Scalar::zero(), x), &lp, 12).unwrap() else {
            panic!()
        };
        assert_eq!(w.generators, vec!["[x]".to_string()]);
    }

    #[test]
    fn eval_on_a_cycle_inside_a_quiver() {
        let q = Quiver::from_parts(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "a"), ("z", "b", "c")]).unwrap();
        let cyc = q.parse_path("x.y").unwrap();
        let FiniteDualVerdict::Eval(w) = is_in_finite_dual(&Functional::eval(Scalar::ratio(1, 3), cyc), &q, 8).unwrap()
        else {
            panic!()
        };
        assert!(w.vanishes && w.ideal_closed && w.generators_in_span);
        assert_eq!(w.codimension, 4);
    }

    #[test]
    fn theta_image_verdicts() {
        let lp = QuiverFamily::new(FamilyKind::Loop).truncate(0);
        let x = lp.parse_path("x").unwrap();
        let v = is_in_theta_image(&Functional::eval(Scalar::one(), x.clone()), QuiverOrFamily::Quiver(&lp), 6, 10).unwrap();
        assert!(matches!(v, MonomialVerdict::NoUpToBound { bound: 10, .. }));
        let v = is_in_theta_image(&Functional::eval(Scalar::zero(), x.clone()), QuiverOrFamily::Quiver(&lp), 6, 10).unwrap();
        assert!(v.is_yes());
        assert!(is_in_theta_image(&Functional::zero(), QuiverOrFamily::Quiver(&lp), 6, 10).unwrap().is_yes());
        assert!(is_in_theta_image(&Functional::dual(x), QuiverOrFamily::Quiver(&lp), 6, 10).unwrap().is_yes());
    }

    #[test]
    fn theta_iso() {
        let line = Quiver::from_parts(&["u", "v", "w"], &[("x", "u", "v"), ("y", "v", "w")]).unwrap();
        let r = theta_iso_check(&line, 6, 10).unwrap();
        assert!(r.iso);
        assert_eq!((r.dim_coalgebra, r.dim_dual, r.dim_image), (Some(6), Some(6), Some(6)));
        let point = Quiver::from_parts(&["v"], &[]).unwrap();
        assert_eq!(theta_iso_check(&point, 6, 10).unwrap().dim_dual, Some(1));
        let lp = QuiverFamily::new(FamilyKind::Loop).truncate(0);
        let r = theta_iso_check(&lp, 6, 10).unwrap();
        assert!(!r.iso);
        assert_eq!(r.witness.as_deref(), Some("rule:eval(1, x)"));
        assert!(!r.witness_monomial.unwrap().is_yes());
    }

    #[test]
    fn characterizations_agree() {
        let q = Quiver::from_parts(&["u", "v", "w"], &[("x", "u", "v"), ("y", "v", "w"), ("z", "u", "w")]).unwrap();
        let (a, _) = StructuredAlgebra::from_quiver(&q).unwrap();
        for k in 0..a.dim() {
            let f = Vector::unit(k);
            let c = finite_dual_characterizations(&a, &f);
            assert!(c.agree, "{c:?}");
            let w = finite_dual_witness(&a, &f);
            assert!(w.idempotents_outside <= w.codimension);
        }
    }

    // Given a cofinite ideal H of A⊗B, I = {a : a⊗B ⊆ H} and
    // J = {b : A⊗b ⊆ H} are cofinite ideals with I⊗B + A⊗J ⊆ H.
    #[test]
    fn tensor_ideals_from_a_cofinite_ideal() {
        let q = arrow();
        let (a, _) = StructuredAlgebra::from_quiver(&q).unwrap();
        let t = a.tensor(&a).unwrap();
        let m = a.dim();
        for k in 0..t.dim() {
            let h = finite_dual_witness(&t, &Vector::unit(k));
            let hs = Subspace::spanned_by(&h.ideal);
            let lift = |x: &Vector, y: &Vector| -> Vector {
                let mut v = Vector::zero();
                for (&i, c) in x.iter() {
                    for (&j, d) in y.iter() {
                        v.add_term(i * m + j, c * d);
                    }
                }
                v
            };
            // a ∈ I iff a⊗b_j ∈ H for every j: intersect the preimages
            let side = |left: bool| -> Subspace<usize> {
                let mut cols = Vec::new();
                for i in 0..m {
                    let mut col: SparseVector<(usize, usize)> = SparseVector::zero();
                    for j in 0..m {
                        let (x, y) = if left { (Vector::unit(i), Vector::unit(j)) } else { (Vector::unit(j), Vector::unit(i)) };
                        for (&l, c) in hs.reduce(&lift(&x, &y)).iter() {
                            col.add_term((j, l), c.clone());
                        }
                    }
                    cols.push(col);
                }
                Subspace::spanned_by(&kernel(&cols).iter().map(|c| dense(c)).collect::<Vec<_>>())
            };
            let (i_ideal, j_ideal) = (side(true), side(false));
            for g in i_ideal.basis() {
                for j in 0..m {
                    assert!(hs.contains(&lift(g, &Vector::unit(j))));
                }
            }
            for g in j_ideal.basis() {
                for i in 0..m {
                    assert!(hs.contains(&lift(&Vector::unit(i), g)));
                }
            }
            let basis: Vec<Vector> = (0..m).map(Vector::unit).collect();
            for s in [&i_ideal, &j_ideal] {
                for g in s.basis() {
                    assert!(basis.iter().all(|b| s.contains(&a.mul(b, g)) && s.contains(&a.mul(g, b))));
                }
            }
        }
    }
}
