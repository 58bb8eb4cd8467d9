//! Incidence coalgebras and incidence algebras of finite posets.

mod poset;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use poset::{posets_up_to_iso, Interval, Poset};

use crate::coalgebra::{is_morphism_on, Coalgebra, PathCoalgebra};
use crate::error::{Error, Result};
use crate::finite_dual::{dual_coalgebra, StructuredAlgebra, Vector};
use crate::linalg::{rank, Scalar, SparseVector};
use crate::quiver::{check_unique_path_condition, Quiver};
use crate::Element;

/// An element of `KX`, or a finitely supported function on intervals.
pub type IncidenceElement = SparseVector<Interval>;

/// `KX` with `Δ(e_{x,y}) = Σ_{x≤z≤y} e_{x,z}⊗e_{z,y}` and `ε(e_{x,y}) = δ_{x,y}`.
pub struct IncidenceCoalgebra<'a> {
    pub poset: &'a Poset,
}

impl Coalgebra for IncidenceCoalgebra<'_> {
    type Label = Interval;

    fn delta(&self, &(x, y): &Interval) -> SparseVector<(Interval, Interval)> {
        self.poset
            .between(x, y)
            .into_iter()
            .map(|z| (((x, z), (z, y)), Scalar::one()))
            .collect()
    }

    fn epsilon(&self, &(x, y): &Interval) -> Scalar {
        if x == y {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }
}

pub fn incidence_comultiply(poset: &Poset, c: &IncidenceElement) -> SparseVector<(Interval, Interval)> {
    IncidenceCoalgebra { poset }.delta_vec(c)
}

pub fn incidence_counit(poset: &Poset, c: &IncidenceElement) -> Scalar {
    IncidenceCoalgebra { poset }.epsilon_vec(c)
}

/// One vertex per element and one arrow `x<y` per cover relation.
pub fn hasse_quiver(poset: &Poset) -> Quiver {
    let mut q = Quiver::new();
    for l in poset.labels() {
        q.add_vertex(l).expect("poset labels are distinct");
    }
    for (x, y) in poset.covers() {
        q.add_arrow_ids(&format!("{}<{}", poset.label(x), poset.label(y)), x, y)
            .expect("cover labels are distinct");
    }
    q
}

/// `φ(e_{x,y})`: the sum of all paths from `x` to `y` in the Hasse quiver.
pub fn phi_embed(poset: &Poset, hasse: &Quiver, c: &IncidenceElement) -> Element {
    let bound = poset.len();
    c.flat_map(|&(x, y)| {
        hasse
            .paths_between(x, y, bound)
            .into_iter()
            .map(|p| (p, Scalar::one()))
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub intervals: usize,
    pub paths: usize,
    pub morphism: bool,
    pub injective: bool,
    pub surjective: bool,
    pub unique_paths: bool,
    /// surjectivity coincides with the unique-path condition
    pub agree: bool,
}

pub fn check_phi(poset: &Poset) -> PhiReport {
    let hasse = hasse_quiver(poset);
    let source = IncidenceCoalgebra { poset };
    let target = PathCoalgebra { quiver: &hasse };
    let intervals = poset.intervals();
    let phi = |i: &Interval| phi_embed(poset, &hasse, &SparseVector::unit(*i));
    let morphism = intervals
        .iter()
        .all(|i| is_morphism_on(&source, &target, phi, &SparseVector::unit(*i)));
    let images: Vec<Element> = intervals.iter().map(phi).collect();
    let r = rank(&images);
    let paths = hasse.all_paths().expect("Hasse quivers are acyclic").len();
    let unique_paths = check_unique_path_condition(&hasse).expect("Hasse quivers are acyclic").holds;
    let surjective = r == paths;
    PhiReport {
        intervals: intervals.len(),
        paths,
        morphism,
        injective: r == intervals.len(),
        surjective,
        unique_paths,
        agree: surjective == unique_paths,
    }
}

/// `(fg)(x,y) = Σ_{x≤z≤y} f(x,z) g(z,y)`
pub fn incidence_convolve(poset: &Poset, f: &IncidenceElement, g: &IncidenceElement) -> IncidenceElement {
    let mut out = SparseVector::zero();
    for (&(x, z), a) in f.iter() {
        for (&(w, y), b) in g.iter() {
            if z == w && poset.leq(x, y) {
                out.add_term((x, y), a * b);
            }
        }
    }
    out
}

/// `δ`, the identity of the incidence algebra.
pub fn incidence_identity(poset: &Poset) -> IncidenceElement {
    (0..poset.len()).map(|x| ((x, x), Scalar::one())).collect()
}

/// `FIA(X)` on the basis `E_{x,y}` (in interval order), with idempotents `E_{x,x}`.
pub fn fia_algebra(poset: &Poset) -> Result<(StructuredAlgebra, Vec<Interval>)> {
    let intervals = poset.intervals();
    let index: BTreeMap<Interval, usize> = intervals.iter().enumerate().map(|(i, &iv)| (iv, i)).collect();
    let mut products = BTreeMap::new();
    for (i, &(x, y)) in intervals.iter().enumerate() {
        for (j, &(u, v)) in intervals.iter().enumerate() {
            if y == u {
                products.insert((i, j), Vector::unit(index[&(x, v)]));
            }
        }
    }
    let idempotents = (0..poset.len()).map(|x| Vector::unit(index[&(x, x)])).collect();
    let labels = intervals
        .iter()
        .map(|&(x, y)| format!("E({},{})", poset.label(x), poset.label(y)))
        .collect();
    Ok((StructuredAlgebra::new(labels, products, idempotents)?, intervals))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceIsoReport {
    pub iso: bool,
    pub dim: usize,
    pub dual_is_coalgebra: bool,
    pub morphism: bool,
    pub bijective: bool,
}

/// `θ: KX → FIA(X)⁰`, `e_{x,y} ↦` evaluation at `e_{x,y}`.
pub fn theta_incidence_iso_check(poset: &Poset) -> Result<IncidenceIsoReport> {
    let (a, intervals) = fia_algebra(poset)?;
    let dual = dual_coalgebra(&a);
    let index: BTreeMap<Interval, usize> = intervals.iter().enumerate().map(|(i, &iv)| (iv, i)).collect();
    let source = IncidenceCoalgebra { poset };
    let theta = |i: &Interval| Vector::unit(index[i]);
    let morphism = intervals
        .iter()
        .all(|i| is_morphism_on(&source, &dual, theta, &SparseVector::unit(*i)));
    let images: Vec<Vector> = intervals.iter().map(theta).collect();
    let bijective = rank(&images) == a.dim() && a.dim() == intervals.len();
    let dual_is_coalgebra = dual.verify();
    Ok(IncidenceIsoReport {
        iso: morphism && bijective && dual_is_coalgebra,
        dim: intervals.len(),
        dual_is_coalgebra,
        morphism,
        bijective,
    })
}

/// The infinite posets with closed-form answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PosetFamily {
    /// `(ℕ, ≤)`
    NaturalChain,
    /// `ℕ` with no relations between distinct elements
    NaturalAntichain,
}

impl PosetFamily {
    /// The first `n` elements.
    pub fn truncate(self, n: usize) -> Poset {
        match self {
            PosetFamily::NaturalChain => Poset::chain(n),
            PosetFamily::NaturalAntichain => Poset::antichain(n),
        }
    }
}

impl fmt::Display for PosetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetFamily::NaturalChain => write!(f, "nat-chain"),
            PosetFamily::NaturalAntichain => write!(f, "nat-antichain"),
        }
    }
}

impl FromStr for PosetFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "nat-chain" => Ok(PosetFamily::NaturalChain),
            "nat-antichain" => Ok(PosetFamily::NaturalAntichain),
            other => Err(Error::parse(1, 1, format!("unknown poset family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum PosetOrFamily<'a> {
    Poset(&'a Poset),
    Family(PosetFamily),
}

/// `c·E_{x,y} = Σ_{u ≤ x} c(e_{u,x}) E_{u,y}` for one basis function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceCertificate {
    pub target: Interval,
    pub elements: Vec<Interval>,
    pub functionals: Vec<Interval>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiperfectReport {
    pub holds: bool,
    pub explanation: String,
    pub certificates: Vec<IncidenceCertificate>,
    /// the finite poset on which certificates were checked
    pub checked_on: Option<usize>,
}

impl SemiperfectReport {
    pub fn all_verified(&self) -> bool {
        self.certificates.iter().all(|c| c.verified)
    }
}

fn incidence_certificates(poset: &Poset) -> Vec<IncidenceCertificate> {
    let intervals = poset.intervals();
    intervals
        .iter()
        .map(|&(x, y)| {
            let us: Vec<usize> = (0..poset.len()).filter(|&u| poset.leq(u, x)).collect();
            let elements: Vec<Interval> = us.iter().map(|&u| (u, x)).collect();
            let functionals: Vec<Interval> = us.iter().map(|&u| (u, y)).collect();
            let e = SparseVector::unit((x, y));
            let verified = intervals.iter().all(|&c| {
                let lhs = incidence_convolve(poset, &SparseVector::unit(c), &e);
                let rhs: IncidenceElement = elements
                    .iter()
                    .zip(&functionals)
                    .filter(|(el, _)| **el == c)
                    .map(|(_, f)| (*f, Scalar::one()))
                    .collect();
                lhs == rhs
            });
            IncidenceCertificate {
                target: (x, y),
                elements,
                functionals,
                verified,
            }
        })
        .collect()
}

/// Finitely many elements below and above each element, with the
/// rationality certificates of every `E_{x,y}` on finite posets.
pub fn incidence_semiperfect_check(target: PosetOrFamily<'_>, truncation: usize) -> SemiperfectReport {
    match target {
        PosetOrFamily::Poset(p) => SemiperfectReport {
            holds: true,
            explanation: "finite poset".into(),
            certificates: incidence_certificates(p),
            checked_on: Some(p.len()),
        },
        PosetOrFamily::Family(PosetFamily::NaturalChain) => SemiperfectReport {
            holds: false,
            explanation: "infinitely many y with x ≤ y for every x".into(),
            certificates: vec![],
            checked_on: None,
        },
        PosetOrFamily::Family(PosetFamily::NaturalAntichain) => {
            let p = PosetFamily::NaturalAntichain.truncate(truncation);
            SemiperfectReport {
                holds: true,
                explanation: "each element is comparable only to itself".into(),
                certificates: incidence_certificates(&p),
                checked_on: Some(truncation),
            }
        }
    }
}
