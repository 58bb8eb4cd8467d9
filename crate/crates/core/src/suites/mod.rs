//! Named batches of checks over the corpus and seeded random instances.
//!
//! Each suite returns a [`SuiteReport`] whose items are ordered by name, so
//! that the same seed always yields the same report.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{bialgebra_check, build_cycle_counterexample, build_multiarrow_counterexample, MonomialVerdict};
use crate::coalgebra::subcoalgebra_closure;
use crate::corpus::{
    acyclic_corpus, all_quivers, family_corpus, named_quiver, poset_corpus, quiver_corpus, random_acyclic_quiver,
    random_element, random_quiver, random_tensor, rng,
};
use crate::dual::{gamma_membership, is_rational_left, psi_embed, reflexivity_verdict, Functional, Rationality};
use crate::error::{Error, Result};
use crate::finite_dual::{is_in_finite_dual, is_in_theta_image, theta_iso_check, FiniteDualVerdict};
use crate::incidence::{
    check_phi, incidence_semiperfect_check, posets_up_to_iso, theta_incidence_iso_check, Poset, PosetOrFamily,
};
use crate::linalg::{rank, Scalar, SparseVector};
use crate::product::{
    binomial, example56_factorization, star56_subcoalgebra, factor_perp_element, lattice_walks, product_quiver,
    saturate_subcoalgebra,
};
use crate::quiver::{
    check_prop32_equivalence, check_recovery_condition, check_semiperfect_condition, longest_path_len, FamilyKind,
    Quiver, QuiverFamily, QuiverOrFamily,
};
use crate::representations::{annihilators_all_monomial, cycle_quotient_module, is_locally_nilpotent, rep_from_module};

pub const SUITES: [&str; 12] = [
    "bialgebra", "ex35", "ex56", "lemma58", "prop32", "prop41", "prop53", "thm33", "thm36", "thm42", "thm43", "thm57",
];

/// How many failure descriptions an item keeps.
const KEEP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteItem {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    /// the first few failing instances
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub items: Vec<SuiteItem>,
}

struct Tally {
    item: SuiteItem,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            item: SuiteItem {
                name: name.into(),
                passed: true,
                checked: 0,
                failed: 0,
                failures: vec![],
            },
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.item.checked += 1;
        if !ok {
            self.item.passed = false;
            self.item.failed += 1;
            if self.item.failures.len() < KEEP {
                self.item.failures.push(what());
            }
        }
    }

    /// Records an error as a failure.
    fn record_result<T>(&mut self, r: Result<T>, ok: impl FnOnce(&T) -> bool, what: impl FnOnce() -> String) {
        match r {
            Ok(v) => {
                let good = ok(&v);
                self.record(good, what);
            }
            Err(e) => self.record(false, || format!("{}: {e}", what())),
        }
    }

    fn done(self) -> SuiteItem {
        self.item
    }
}

fn report(suite: &str, seed: u64, mut items: Vec<SuiteItem>) -> SuiteReport {
    items.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport {
        suite: suite.into(),
        seed,
        passed: items.iter().all(|i| i.passed),
        items,
    }
}

/// Runs the suite `name` with randomness drawn from `seed`.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let items = match name {
        "bialgebra" => bialgebra(),
        "ex35" => cycle_quotients(),
        "ex56" => star_factorizations(seed),
        "lemma58" => lattice_walk_embedding(seed),
        "prop32" => finite_subsets(),
        "prop41" => poset_embedding(),
        "prop53" => perp_factorizations(seed),
        "thm33" => theta_onto(seed),
        "thm36" => rational_part(),
        "thm42" => incidence_iso(seed),
        "thm43" => incidence_certificates(),
        "thm57" => reflexivity_and_closure(),
        other => {
            return Err(Error::Unsupported(format!(
                "unknown suite `{other}`; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(report(name, seed, items))
}

/// `n vertices, arrows [v0→v1, …]`
fn shape(q: &Quiver) -> String {
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("{}→{}", q.vertex_label(a.source), q.vertex_label(a.target)))
        .collect();
    format!("{} vertices, arrows [{}]", q.num_vertices(), arrows.join(", "))
}

fn bialgebra() -> Vec<SuiteItem> {
    let mut t = Tally::new("criterion-agrees-on-small-quivers");
    for q in all_quivers(3, 3) {
        let r = bialgebra_check(&q, 3);
        t.record(r.agree, || {
            format!("{}: criterion {}, multiplicative {}", shape(&q), r.criterion, r.multiplicative)
        });
    }
    vec![t.done()]
}

fn cycle_quotients() -> Vec<SuiteItem> {
    let mut dims = Tally::new("dimension-and-action");
    let mut nil = Tally::new("not-locally-nilpotent");
    let mut mono = Tally::new("annihilators-not-monomial");
    for n in 1..=3 {
        let c = match cycle_quotient_module(n) {
            Ok(c) => c,
            Err(e) => {
                dims.record(false, || format!("n = {n}: {e}"));
                continue;
            }
        };
        dims.record(
            c.module.dim() == n * n && c.associative && c.unital && c.relations_hold && c.reductions_agree,
            || format!("n = {n}: dimension {}", c.module.dim()),
        );
        let r = rep_from_module(&c.module);
        let report = is_locally_nilpotent(&r);
        nil.record(!report.nilpotent && report.cycle_witness.is_some(), || format!("n = {n}: {report:?}"));
        mono.record(
            !c.monomial.is_yes() && !annihilators_all_monomial(&r, 4 * n, n * n),
            || format!("n = {n}: {:?}", c.monomial),
        );
    }
    vec![dims.done(), nil.done(), mono.done()]
}

fn random_perp_functional(rng: &mut impl Rng, paths: &[crate::Path], w: &[crate::Path]) -> Functional {
    let mut f = SparseVector::zero();
    for p in paths.iter().filter(|p| !w.contains(p)) {
        if rng.gen_bool(0.6) {
            f.add_term(p.clone(), Scalar::random_small(rng, 3));
        }
    }
    Functional::Finite(f)
}

fn star_factorizations(seed: u64) -> Vec<SuiteItem> {
    let mut r = rng(seed);
    let mut t = Tally::new("rank-one-factorizations");
    for n in 1..=2 {
        let (q, w) = match star56_subcoalgebra(n, 6) {
            Ok(x) => x,
            Err(e) => {
                t.record(false, || e.to_string());
                continue;
            }
        };
        let paths = q.all_paths().expect("the truncated star is acyclic");
        for i in 0..10 {
            let eta = random_perp_functional(&mut r, &paths, &w);
            t.record_result(
                example56_factorization(n, 6, &eta),
                |wit| wit.verified(),
                || format!("n = {n}, instance {i}: {}", eta.describe(&q)),
            );
        }
    }
    vec![t.done()]
}

fn lattice_walk_embedding(seed: u64) -> Vec<SuiteItem> {
    let mut counts = Tally::new("walk-counts");
    for n in 0..=6 {
        for k in 0..=6 {
            let got = lattice_walks(n, k).len() as u128;
            counts.record(got == binomial(n + k, k), || format!("({n}, {k}): {got} walks"));
        }
    }
    let mut r = rng(seed);
    let mut morph = Tally::new("alpha-morphism");
    let mut inj = Tally::new("alpha-injective");
    for i in 0..100 {
        let (a, b) = (random_quiver(&mut r, 3, 4), random_quiver(&mut r, 3, 4));
        let pq = product_quiver(&a, &b).expect("generated labels are distinct");
        let t = random_tensor(&mut r, &a, &b, 3, 4);
        morph.record(pq.alpha_is_morphism_on(&t), || format!("instance {i}"));
        let pairs: Vec<_> = t.labels().cloned().collect();
        inj.record(pq.alpha_injective_on(&pairs), || format!("instance {i}"));
    }
    let mut trip = Tally::new("walk-round-trips");
    for name in ["arrow", "a3"] {
        let q = named_quiver(name).expect("corpus quiver");
        let pq = product_quiver(&q, &q).expect("corpus labels are distinct");
        let paths = q.all_paths().expect("acyclic");
        for p in &paths {
            for s in &paths {
                for w in lattice_walks(p.len(), s.len()) {
                    let ok = pq
                        .walk_path(p, s, &w)
                        .and_then(|g| pq.decompose(&g))
                        .is_ok_and(|(p2, s2, w2)| &p2 == p && &s2 == s && w2 == w);
                    trip.record(ok, || {
                        format!("{name}: ({}, {}, {})", q.path_name(p), q.path_name(s), w.describe())
                    });
                }
            }
        }
        for g in pq.quiver.all_paths().expect("products of acyclic quivers are acyclic") {
            let ok = pq
                .decompose(&g)
                .and_then(|(p, s, w)| pq.walk_path(&p, &s, &w))
                .is_ok_and(|g2| g2 == g);
            trip.record(ok, || format!("{name}: {}", pq.quiver.path_name(&g)));
        }
    }
    vec![counts.done(), morph.done(), inj.done(), trip.done()]
}

fn finite_subsets() -> Vec<SuiteItem> {
    let mut t = Tally::new("clauses-agree");
    for q in all_quivers(4, 4) {
        t.record_result(check_prop32_equivalence(&q), |r| r.agree, || shape(&q));
    }
    for (name, q) in quiver_corpus() {
        t.record_result(check_prop32_equivalence(&q), |r| r.agree, || name.to_string());
    }
    vec![t.done()]
}

fn poset_embedding() -> Vec<SuiteItem> {
    let mut m = Tally::new("injective-morphism");
    let mut s = Tally::new("surjective-iff-unique-paths");
    for n in 1..=5 {
        for p in posets_up_to_iso(n) {
            let r = check_phi(&p);
            m.record(r.morphism && r.injective, || format!("{:?}", p.covers()));
            s.record(r.agree, || format!("{:?}", p.covers()));
        }
    }
    vec![m.done(), s.done()]
}

fn perp_factorizations(seed: u64) -> Vec<SuiteItem> {
    let mut r = rng(seed);
    let mut t = Tally::new("two-term-factorization");
    let mut made = 0;
    while made < 25 {
        let q = random_acyclic_quiver(&mut r, 5, 6);
        let paths = q.all_paths().expect("acyclic");
        let seedling = random_element(&mut r, &q, 2, 2);
        let v = subcoalgebra_closure(&[seedling]);
        let Ok(sat) = saturate_subcoalgebra(v.basis(), &q) else {
            continue;
        };
        made += 1;
        let eta = random_perp_functional(&mut r, &paths, &sat.w);
        let max_len = longest_path_len(&q).unwrap_or(0);
        t.record_result(
            factor_perp_element(&eta, &sat, &q, max_len),
            |w| w.verified() && w.checked == paths.len(),
            || format!("instance {made}: {}", eta.describe(&q)),
        );
    }
    vec![t.done()]
}

fn theta_onto(seed: u64) -> Vec<SuiteItem> {
    let mut iso = Tally::new("acyclic-corpus-iso");
    for (name, q) in acyclic_corpus() {
        iso.record_result(theta_iso_check(&q, 6, 10), |r| r.iso, || name.to_string());
    }
    let mut cyc = Tally::new("cyclic-not-onto");
    let cyclic: Vec<(String, Quiver)> = [FamilyKind::Loop, FamilyKind::Cycle(1), FamilyKind::Cycle(2), FamilyKind::Cycle(3)]
        .into_iter()
        .map(|k| (k.to_string(), QuiverFamily::new(k).truncate(0)))
        .collect();
    for (name, q) in cyclic {
        cyc.record_result(
            theta_iso_check(&q, 6, 10),
            |r| {
                !r.iso
                    && r.witness.as_deref().is_some_and(|w| w.starts_with("rule:eval(1,"))
                    && r.witness_in_finite_dual.as_ref().is_some_and(|w| w.vanishes && w.ideal_closed)
                    && matches!(r.witness_monomial, Some(MonomialVerdict::NoUpToBound { bound: 10, .. }))
            },
            || name,
        );
    }
    let mut image = Tally::new("finite-support-image");
    let mut r = rng(seed);
    for i in 0..50 {
        let q = random_acyclic_quiver(&mut r, 5, 6);
        let e = random_element(&mut r, &q, 4, 3);
        let f = Functional::Finite(e);
        let mono = is_in_theta_image(&f, QuiverOrFamily::Quiver(&q), 6, 10);
        let dual = is_in_finite_dual(&f, &q, 6);
        let ok = matches!(mono, Ok(MonomialVerdict::YesExhaustive { .. }))
            && matches!(dual, Ok(FiniteDualVerdict::Monomial { .. }));
        image.record(ok, || format!("instance {i}: {}", f.describe(&q)));
    }
    let mut counter = Tally::new("cycle-counterexample");
    for s in 1..=3 {
        let q = QuiverFamily::new(FamilyKind::Cycle(s)).truncate(0);
        counter.record_result(
            build_cycle_counterexample(&q, 4 * s, 10),
            |c| {
                c.identities_hold
                    && c.ideal_closed
                    && c.no_cycle_path_in_ideal
                    && c.codimension == s * s
                    && !c.monomial.is_yes()
            },
            || format!("s = {s}"),
        );
    }
    let mut multi = Tally::new("multiarrow-counterexample");
    multi.record_result(
        build_multiarrow_counterexample(&QuiverFamily::new(FamilyKind::MultiArrow), 5),
        |c| c.ideal_closed && c.no_arrow_in_ideal && c.x0_outside,
        || "N = 5".into(),
    );
    vec![iso.done(), cyc.done(), image.done(), counter.done(), multi.done()]
}

fn rational_part() -> Vec<SuiteItem> {
    let mut certs = Tally::new("dual-basis-certificates");
    let mut span = Tally::new("psi-spans-dual");
    for (name, q) in acyclic_corpus() {
        let paths = q.all_paths().expect("acyclic");
        for p in &paths {
            certs.record_result(
                is_rational_left(&Functional::dual(p.clone()), QuiverOrFamily::Quiver(&q), 6),
                |r| r.certificate().is_some_and(|c| c.verified && c.truncation.is_none()),
                || format!("{name}: {}", q.path_name(p)),
            );
        }
        let images: Vec<SparseVector<crate::Path>> = paths
            .iter()
            .map(|p| psi_embed(&SparseVector::unit(p.clone())).restrict(&paths))
            .collect();
        span.record(rank(&images) == paths.len(), || name.to_string());
    }
    let mut line = Tally::new("half-line-prefix-certificates");
    let fam = QuiverFamily::new(FamilyKind::Line1);
    let q = fam.truncate(10);
    for v in 0..=5 {
        line.record_result(
            is_rational_left(&Functional::starts_at(v), QuiverOrFamily::Family(&fam), 10),
            |r| {
                matches!(r, Rationality::Rational { infinite_support: true, .. })
                    && r.certificate().is_some_and(|c| c.verified && c.truncation == Some(10))
            },
            || q.vertex_label(v).to_string(),
        );
    }
    let mut obstruct = Tally::new("cyclic-obstructions");
    for (name, q) in quiver_corpus().into_iter().filter(|(_, q)| q.all_paths().is_none()) {
        let c = crate::quiver::find_simple_cycle(&q).expect("cyclic");
        obstruct.record_result(
            is_rational_left(&Functional::dual(q.vertex_path(c.source())), QuiverOrFamily::Quiver(&q), 6),
            |r| matches!(r, Rationality::NotRational { .. }),
            || name.to_string(),
        );
    }
    vec![certs.done(), span.done(), line.done(), obstruct.done()]
}

fn incidence_iso(seed: u64) -> Vec<SuiteItem> {
    let mut t = Tally::new("theta-incidence-iso");
    for (name, p) in poset_corpus() {
        t.record_result(theta_incidence_iso_check(&p), |r| r.iso, || name);
    }
    let mut r = rng(seed);
    for i in 0..20 {
        let n = r.gen_range(1..=8);
        let p = Poset::random(&mut r, n, 0.4);
        t.record_result(theta_incidence_iso_check(&p), |r| r.iso, || format!("random poset {i}"));
    }
    vec![t.done()]
}

fn incidence_certificates() -> Vec<SuiteItem> {
    let mut t = Tally::new("interval-certificates");
    let mut posets: Vec<(String, Poset)> = (1..=6).map(|n| (format!("chain{n}"), Poset::chain(n))).collect();
    posets.push(("diamond".into(), Poset::diamond()));
    posets.extend(poset_corpus());
    for (name, p) in posets {
        let r = incidence_semiperfect_check(PosetOrFamily::Poset(&p), 0);
        t.record(
            r.holds && r.all_verified() && r.certificates.len() == p.intervals().len(),
            || name,
        );
    }
    vec![t.done()]
}

fn reflexivity_and_closure() -> Vec<SuiteItem> {
    let mut refl = Tally::new("reflexive-iff-finite-acyclic");
    let mut gamma = Tally::new("gamma-iff-finitely-many-paths");
    for (name, q) in quiver_corpus() {
        let finite = q.all_paths().is_some();
        let v = reflexivity_verdict(QuiverOrFamily::Quiver(&q));
        refl.record(v.proper && v.reflexive == finite, || name.to_string());
        gamma.record(gamma_membership(QuiverOrFamily::Quiver(&q)).in_image == finite, || name.to_string());
    }
    for fam in family_corpus() {
        let facts = fam.facts();
        let v = reflexivity_verdict(QuiverOrFamily::Family(&fam));
        refl.record(v.reflexive == (facts.finite_quiver && facts.acyclic), || fam.kind.to_string());
        gamma.record(
            gamma_membership(QuiverOrFamily::Family(&fam)).in_image == facts.finitely_many_paths,
            || fam.kind.to_string(),
        );
    }
    let mut closure = Tally::new("product-and-union-closure");
    let corpus = quiver_corpus();
    for (an, a) in &corpus {
        for (bn, b) in &corpus {
            let pq = product_quiver(a, b).expect("product labels are distinct").quiver;
            let un = a.disjoint_union(b, "'").expect("suffixed labels are distinct");
            type Check = fn(QuiverOrFamily<'_>) -> crate::quiver::Verdict;
            let checks: [(&str, Check); 2] =
                [("recovery", check_recovery_condition), ("semiperfect", check_semiperfect_condition)];
            for (what, check) in checks {
                let both = check(QuiverOrFamily::Quiver(a)).holds && check(QuiverOrFamily::Quiver(b)).holds;
                for (kind, c) in [("product", &pq), ("union", &un)] {
                    let holds = check(QuiverOrFamily::Quiver(c)).holds;
                    closure.record(holds == both, || format!("{what} of {kind} {an} × {bn}: {holds}, factors {both}"));
                }
            }
        }
    }
    vec![refl.done(), gamma.done(), closure.done()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("no-such-suite", 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn items_are_sorted_and_deterministic() {
        let a = run_suite("lemma58", 3).unwrap();
        let b = run_suite("lemma58", 3).unwrap();
        assert_eq!(a, b);
        let names: Vec<_> = a.items.iter().map(|i| i.name.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(a.passed, "{a:?}");
    }

    #[test]
    fn cycle_quotient_suite_passes() {
        let r = run_suite("ex35", 0).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.items[0].checked, 3);
    }
}
