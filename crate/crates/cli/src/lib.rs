//! Command dispatch for the `pathco` binary.
//!
//! Every verb produces a [`Report`]; [`run`] turns the parsed arguments into
//! a report and an exit status.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use pathco::algebra::{bialgebra_check, build_cycle_counterexample, build_multiarrow_counterexample, multiply_in};
use pathco::coalgebra::{comultiply, counit, subcoalgebra_closure};
use pathco::dual::{convolve, gamma_membership, reflexivity_verdict};
use pathco::finite_dual::theta_iso_check;
use pathco::incidence::{
    check_phi, hasse_quiver, incidence_semiperfect_check, phi_embed, theta_incidence_iso_check, Poset, PosetFamily,
    PosetOrFamily,
};
use pathco::linalg::Field;
use pathco::parse::{
    parse_element, parse_functional, parse_incidence_element, parse_poset, parse_quiver_input, parse_representation,
    parse_tensor, quiver_to_text, QuiverInput,
};
use pathco::product::{coreflexivity_verdict, factor_perp_element, product_quiver, saturate_subcoalgebra, CoalgebraDescription, Coreflexivity};
use pathco::quiver::{check_prop32_equivalence, check_semiperfect_condition, FamilyKind, QuiverFamily, QuiverOrFamily};
use pathco::representations::is_locally_nilpotent;
use pathco::suites::run_suite;
use pathco::{Error, Quiver, Tensor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pathco", version, about = "Exact computations with path coalgebras, incidence coalgebras and their duals")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// longest path enumerated; also the truncation of infinite families
    #[arg(long, global = true, default_value_t = 6)]
    pub max_len: usize,
    /// `q` for the rationals or `fp:<prime>`
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    /// largest complement searched for monomial ideals
    #[arg(long, global = true, default_value_t = 10)]
    pub codim_bound: usize,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Paths of length at most --max-len.
    Paths { quiver: String },
    /// Comultiplication and counit of an element.
    Delta { quiver: String, element: String },
    /// Product in the path algebra.
    Mul { quiver: String, left: String, right: String },
    /// Convolution of two functionals, tabulated up to --max-len.
    Conv { quiver: String, left: String, right: String },
    /// The product quiver.
    Product { left: String, right: String },
    /// The shuffle map from K[Γ]⊗K[Δ] into the path coalgebra of the product quiver.
    Alpha { left: String, right: String, tensor: String },
    /// The embedding of an incidence coalgebra into the path coalgebra of its Hasse quiver.
    Phi { poset: String, element: Option<String> },
    /// Writes a functional vanishing on a subcoalgebra as f₁g₁ + f₂g₂.
    FactorPerp {
        quiver: String,
        eta: String,
        /// generators of the subcoalgebra V
        generators: Vec<String>,
    },
    /// Local nilpotence of a representation.
    RepLocnilp { quiver: String, rep: String },
    /// Non-monomial cofinite ideals on cycles and parallel arrows.
    Counterexample {
        #[arg(value_enum)]
        kind: CounterexampleKind,
        quiver: Option<String>,
    },
    /// Checks one criterion on one input.
    Check {
        #[arg(value_enum)]
        name: CheckName,
        targets: Vec<String>,
    },
    /// Runs a named suite of seeded checks.
    Suite { name: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterexampleKind {
    Cycle,
    Multiarrow,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckName {
    Thm33,
    Semiperfect,
    Bialgebra,
    Prop41,
    Thm42,
    Thm43,
    Coreflexive,
    Prop32,
    Thm57,
}

/// The machine-readable result of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verb: String,
    pub ok: bool,
    pub summary: String,
    pub data: Value,
}

impl Report {
    fn new(verb: &str, ok: bool, summary: impl Into<String>, data: Value) -> Self {
        Report {
            verb: verb.into(),
            ok,
            summary: summary.into(),
            data,
        }
    }

    /// Summary line followed by `key: value` lines for the data.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.summary);
        if let Value::Object(map) = &self.data {
            for (k, v) in map {
                match v {
                    Value::String(s) if s.contains('\n') => {
                        let _ = writeln!(out, "{k}:");
                        for line in s.lines() {
                            let _ = writeln!(out, "  {line}");
                        }
                    }
                    Value::String(s) => {
                        let _ = writeln!(out, "{k}: {s}");
                    }
                    Value::Array(items) if items.iter().all(|x| x.is_string()) => {
                        let _ = writeln!(out, "{k}:");
                        for x in items {
                            let _ = writeln!(out, "  {}", x.as_str().unwrap_or_default());
                        }
                    }
                    other => {
                        let _ = writeln!(out, "{k}: {other}");
                    }
                }
            }
        }
        out
    }
}

/// An input problem, reported with exit status 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub source: Option<String>,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl InputError {
    fn from_lib(source: Option<&str>, e: Error) -> Self {
        match e {
            Error::Parse { line, column, message } => InputError {
                source: source.map(str::to_string),
                line: Some(line),
                column: Some(column),
                message,
            },
            other => InputError {
                source: source.map(str::to_string),
                line: None,
                column: None,
                message: other.to_string(),
            },
        }
    }

    fn plain(message: impl Into<String>) -> Self {
        InputError {
            source: None,
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(s) = &self.source {
            write!(f, "{s}:")?;
        }
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "{l}:{c}:")?;
        }
        if self.source.is_some() || self.line.is_some() {
            write!(f, " ")?;
        }
        write!(f, "{}", self.message)
    }
}

type CliResult<T> = Result<T, InputError>;

/// What [`run`] hands back to `main`.
pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Outcome {
    let verb = verb_name(&cli.verb);
    match dispatch(cli) {
        Ok(report) => {
            let stdout = if cli.flags.json {
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                report.to_text()
            };
            Outcome {
                exit: if report.ok { EXIT_OK } else { EXIT_CHECK_FAILED },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stdout = if cli.flags.json {
                let report = Report::new(
                    &verb,
                    false,
                    e.to_string(),
                    json!({ "error": { "source": e.source, "line": e.line, "column": e.column, "message": e.message } }),
                );
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                String::new()
            };
            Outcome {
                exit: EXIT_INPUT,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn verb_name(v: &Verb) -> String {
    match v {
        Verb::Paths { .. } => "paths".into(),
        Verb::Delta { .. } => "delta".into(),
        Verb::Mul { .. } => "mul".into(),
        Verb::Conv { .. } => "conv".into(),
        Verb::Product { .. } => "product".into(),
        Verb::Alpha { .. } => "alpha".into(),
        Verb::Phi { .. } => "phi".into(),
        Verb::FactorPerp { .. } => "factor-perp".into(),
        Verb::RepLocnilp { .. } => "rep-locnilp".into(),
        Verb::Counterexample { kind, .. } => format!("counterexample {}", value_name(*kind)),
        Verb::Check { name, .. } => format!("check {}", value_name(*name)),
        Verb::Suite { .. } => "suite".into(),
    }
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

// ---------------------------------------------------------------------------
// inputs

/// A command-line object: a file path or `family:<kind>`.
enum Target {
    Quiver(QuiverInput),
    Poset(Poset),
    PosetFamily(PosetFamily),
}

fn read(arg: &str) -> CliResult<String> {
    std::fs::read_to_string(FsPath::new(arg)).map_err(|e| InputError {
        source: Some(arg.into()),
        line: None,
        column: None,
        message: format!("cannot read: {e}"),
    })
}

fn first_word(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

fn load(arg: &str) -> CliResult<Target> {
    if let Some(kind) = arg.strip_prefix("family:") {
        if let Ok(k) = kind.parse::<FamilyKind>() {
            return Ok(Target::Quiver(QuiverInput::Family {
                family: QuiverFamily::new(k),
                truncate: None,
            }));
        }
        return kind
            .parse::<PosetFamily>()
            .map(Target::PosetFamily)
            .map_err(|_| InputError::plain(format!("unknown family `{kind}`")));
    }
    let text = read(arg)?;
    let lib = |e| InputError::from_lib(Some(arg), e);
    if first_word(&text) == Some("poset") {
        parse_poset(&text).map(Target::Poset).map_err(lib)
    } else {
        parse_quiver_input(&text).map(Target::Quiver).map_err(lib)
    }
}

fn load_quiver_input(arg: &str) -> CliResult<QuiverInput> {
    match load(arg)? {
        Target::Quiver(q) => Ok(q),
        _ => Err(InputError {
            source: Some(arg.into()),
            line: Some(1),
            column: Some(1),
            message: "expected a quiver".into(),
        }),
    }
}

/// The quiver, with families truncated at `max_len`.
fn load_quiver(arg: &str, flags: &Flags) -> CliResult<Quiver> {
    Ok(load_quiver_input(arg)?.materialize(flags.max_len))
}

fn load_poset(arg: &str, flags: &Flags) -> CliResult<Poset> {
    match load(arg)? {
        Target::Poset(p) => Ok(p),
        Target::PosetFamily(f) => Ok(f.truncate(flags.max_len)),
        Target::Quiver(_) => Err(InputError {
            source: Some(arg.into()),
            line: Some(1),
            column: Some(1),
            message: "expected a poset".into(),
        }),
    }
}

fn expr<T>(what: &str, r: pathco::Result<T>) -> CliResult<T> {
    r.map_err(|e| InputError::from_lib(Some(what), e))
}

fn lib<T>(r: pathco::Result<T>) -> CliResult<T> {
    r.map_err(|e| InputError::from_lib(None, e))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library reports serialize")
}

fn format_tensor(t: &Tensor, left: &Quiver, right: &Quiver) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, ((p, q), c)) in t.iter().enumerate() {
        let (neg, mag) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag}*");
        }
        let _ = write!(out, "[{}|{}]", left.path_name(p), right.path_name(q));
    }
    out
}

// ---------------------------------------------------------------------------
// verbs

pub fn dispatch(cli: &Cli) -> CliResult<Report> {
    let f = &cli.flags;
    match &cli.verb {
        Verb::Paths { quiver } => {
            let q = load_quiver(quiver, f)?;
            let set = q.enumerate_paths(f.max_len);
            let names: Vec<String> = set.paths.iter().map(|p| q.path_name(p)).collect();
            Ok(Report::new(
                "paths",
                true,
                format!(
                    "{} paths of length ≤ {}{}",
                    names.len(),
                    f.max_len,
                    if set.exhaustive { " (exhaustive)" } else { "" }
                ),
                json!({ "paths": names, "max_len": f.max_len, "exhaustive": set.exhaustive }),
            ))
        }
        Verb::Delta { quiver, element } => {
            let q = load_quiver(quiver, f)?;
            let c = expr("element", parse_element(element, &q, f.field))?;
            let d = comultiply(&c);
            let delta = format_tensor(&d, &q, &q);
            Ok(Report::new(
                "delta",
                true,
                format!("Δ({}) = {delta}", q.format_element(&c)),
                json!({ "element": q.format_element(&c), "delta": delta, "terms": d.len(), "counit": counit(&c).to_string() }),
            ))
        }
        Verb::Mul { quiver, left, right } => {
            let q = load_quiver(quiver, f)?;
            let a = expr("left", parse_element(left, &q, f.field))?;
            let b = expr("right", parse_element(right, &q, f.field))?;
            let ab = lib(multiply_in(&q, &a, &b))?;
            let product = q.format_element(&ab);
            Ok(Report::new(
                "mul",
                true,
                format!("({})·({}) = {product}", q.format_element(&a), q.format_element(&b)),
                json!({ "left": q.format_element(&a), "right": q.format_element(&b), "product": product }),
            ))
        }
        Verb::Conv { quiver, left, right } => {
            let q = load_quiver(quiver, f)?;
            let a = expr("left", parse_functional(left, &q, f.field))?;
            let b = expr("right", parse_functional(right, &q, f.field))?;
            let ab = convolve(&a, &b, &q, f.max_len);
            let set = q.enumerate_paths(f.max_len);
            let values: Vec<String> = set
                .paths
                .iter()
                .filter_map(|p| {
                    let v = ab.value(p);
                    (!v.is_zero()).then(|| format!("{} ↦ {v}", q.path_name(p)))
                })
                .collect();
            Ok(Report::new(
                "conv",
                true,
                format!("f·g is nonzero on {} of {} paths of length ≤ {}", values.len(), set.paths.len(), f.max_len),
                json!({
                    "left": a.describe(&q),
                    "right": b.describe(&q),
                    "product": ab.describe(&q),
                    "values": values,
                    "max_len": f.max_len,
                    "exhaustive": set.exhaustive,
                }),
            ))
        }
        Verb::Product { left, right } => {
            let (a, b) = (load_quiver(left, f)?, load_quiver(right, f)?);
            let pq = lib(product_quiver(&a, &b))?;
            Ok(Report::new(
                "product",
                true,
                format!("{} vertices, {} arrows", pq.quiver.num_vertices(), pq.quiver.num_arrows()),
                json!({
                    "vertices": pq.quiver.num_vertices(),
                    "arrows": pq.quiver.num_arrows(),
                    "quiver": quiver_to_text(&pq.quiver),
                }),
            ))
        }
        Verb::Alpha { left, right, tensor } => {
            let (a, b) = (load_quiver(left, f)?, load_quiver(right, f)?);
            let pq = lib(product_quiver(&a, &b))?;
            let t = expr("tensor", parse_tensor(tensor, &a, &b, f.field))?;
            let image = pq.alpha(&t);
            let pairs: Vec<_> = t.labels().cloned().collect();
            let morphism = pq.alpha_is_morphism_on(&t);
            let injective = pq.alpha_injective_on(&pairs);
            let ok = morphism && injective;
            Ok(Report::new(
                "alpha",
                ok,
                format!(
                    "α image has {} terms; morphism {}, injective on the support {}",
                    image.len(),
                    yes_no(morphism),
                    yes_no(injective)
                ),
                json!({
                    "tensor": format_tensor(&t, &a, &b),
                    "image": pq.quiver.format_element(&image),
                    "morphism": morphism,
                    "injective": injective,
                }),
            ))
        }
        Verb::Phi { poset, element } => {
            let p = load_poset(poset, f)?;
            let r = check_phi(&p);
            let mut data = to_value(&r);
            if let Some(e) = element {
                let c = expr("element", parse_incidence_element(e, &p, f.field))?;
                let hasse = hasse_quiver(&p);
                data["image"] = Value::String(hasse.format_element(&phi_embed(&p, &hasse, &c)));
            }
            let ok = r.morphism && r.injective;
            Ok(Report::new(
                "phi",
                ok,
                format!(
                    "φ: {} intervals into {} Hasse paths; morphism {}, injective {}, surjective {}",
                    r.intervals,
                    r.paths,
                    yes_no(r.morphism),
                    yes_no(r.injective),
                    yes_no(r.surjective)
                ),
                data,
            ))
        }
        Verb::FactorPerp { quiver, eta, generators } => {
            let q = load_quiver(quiver, f)?;
            let eta = expr("eta", parse_functional(eta, &q, f.field))?;
            let gens = generators
                .iter()
                .enumerate()
                .map(|(i, g)| expr(&format!("generator {}", i + 1), parse_element(g, &q, f.field)))
                .collect::<CliResult<Vec<_>>>()?;
            let v = subcoalgebra_closure(&gens);
            let sat = lib(saturate_subcoalgebra(v.basis(), &q))?;
            let w = lib(factor_perp_element(&eta, &sat, &q, f.max_len))?;
            let ok = w.verified();
            Ok(Report::new(
                "factor-perp",
                ok,
                format!(
                    "η = f₁g₁ + f₂g₂ {} on {} paths; factors vanish on W: {}",
                    if w.identity_holds { "holds" } else { "fails" },
                    w.checked,
                    yes_no(w.vanish_on_w)
                ),
                json!({
                    "eta": w.eta.describe(&q),
                    "f1": w.f1.describe(&q),
                    "g1": w.g1.describe(&q),
                    "f2": w.f2.describe(&q),
                    "g2": w.g2.describe(&q),
                    "w": w.w.iter().map(|p| q.path_name(p)).collect::<Vec<_>>(),
                    "truncation": w.truncation,
                    "checked": w.checked,
                    "identity_holds": w.identity_holds,
                    "vanish_on_w": w.vanish_on_w,
                }),
            ))
        }
        Verb::RepLocnilp { quiver, rep } => {
            let q = load_quiver(quiver, f)?;
            let text = read(rep)?;
            let r = parse_representation(&text, &q, f.field).map_err(|e| InputError::from_lib(Some(rep), e))?;
            let report = is_locally_nilpotent(&r);
            let summary = match (&report.vanishes_at, &report.cycle_witness) {
                (Some(l), _) => format!("locally nilpotent: every path of length {l} acts as zero"),
                (None, Some(c)) => format!("not locally nilpotent: the cycle {c} acts nontrivially"),
                (None, None) => "not locally nilpotent".into(),
            };
            Ok(Report::new("rep-locnilp", true, summary, to_value(&report)))
        }
        Verb::Counterexample { kind, quiver } => counterexample(*kind, quiver.as_deref(), f),
        Verb::Check { name, targets } => check(*name, targets, f),
        Verb::Suite { name } => {
            let r = run_suite(name, f.seed).map_err(|e| InputError::from_lib(None, e))?;
            let failed: Vec<&str> = r.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
            let summary = if failed.is_empty() {
                format!("suite {name}: all {} items pass (seed {})", r.items.len(), r.seed)
            } else {
                format!("suite {name}: {} of {} items fail: {}", failed.len(), r.items.len(), failed.join(", "))
            };
            Ok(Report::new("suite", r.passed, summary, to_value(&r)))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn counterexample(kind: CounterexampleKind, target: Option<&str>, f: &Flags) -> CliResult<Report> {
    match kind {
        CounterexampleKind::Cycle => {
            let q = load_quiver(target.unwrap_or("family:cycle:1"), f)?;
            let c = lib(build_cycle_counterexample(&q, f.max_len, f.codim_bound))?;
            let ok = c.identities_hold && c.ideal_closed && c.no_cycle_path_in_ideal && !c.monomial.is_yes();
            Ok(Report::new(
                "counterexample cycle",
                ok,
                format!(
                    "cycle {}: cofinite ideal of codimension {} with no cycle path inside; monomial ideal inside: {}",
                    c.cycle,
                    c.codimension,
                    if c.monomial.is_yes() { "found" } else { "none up to the bound" }
                ),
                to_value(&c),
            ))
        }
        CounterexampleKind::Multiarrow => {
            let family = match target {
                None => QuiverFamily::new(FamilyKind::MultiArrow),
                Some(t) => match load_quiver_input(t)? {
                    QuiverInput::Family { family, .. } if family.kind == FamilyKind::MultiArrow => family,
                    _ => return Err(InputError::plain("the multiarrow construction needs `family:multiarrow`")),
                },
            };
            let m = lib(build_multiarrow_counterexample(&family, f.max_len))?;
            let ok = m.ideal_closed && m.no_arrow_in_ideal && m.x0_outside;
            Ok(Report::new(
                "counterexample multiarrow",
                ok,
                format!(
                    "{} parallel arrows: ideal of codimension {} containing no arrow",
                    m.arrows, m.codimension
                ),
                to_value(&m),
            ))
        }
    }
}

fn one_target<'a>(targets: &'a [String], name: &str) -> CliResult<&'a str> {
    match targets {
        [t] => Ok(t),
        _ => Err(InputError::plain(format!("`check {name}` takes exactly one input, got {}", targets.len()))),
    }
}

fn with_target<T>(input: &QuiverInput, f: impl FnOnce(QuiverOrFamily<'_>) -> T) -> T {
    match input {
        QuiverInput::Finite(q) => f(QuiverOrFamily::Quiver(q)),
        QuiverInput::Family { family, .. } => f(QuiverOrFamily::Family(family)),
    }
}

fn check(name: CheckName, targets: &[String], f: &Flags) -> CliResult<Report> {
    let label = format!("check {}", value_name(name));
    let verb = label.as_str();
    match name {
        CheckName::Thm33 => {
            let q = load_quiver(one_target(targets, "thm33")?, f)?;
            let r = lib(theta_iso_check(&q, f.max_len, f.codim_bound))?;
            let summary = match &r.witness {
                None => format!("theta is an isomorphism; dimension {}", r.dim_coalgebra.unwrap_or(0)),
                Some(w) => format!("theta not surjective; witness {w}"),
            };
            Ok(Report::new(verb, r.iso, summary, to_value(&r)))
        }
        CheckName::Semiperfect => {
            let input = load_quiver_input(one_target(targets, "semiperfect")?)?;
            let v = with_target(&input, check_semiperfect_condition);
            Ok(Report::new(verb, v.holds, v.explanation.clone(), to_value(&v)))
        }
        CheckName::Bialgebra => {
            let q = load_quiver(one_target(targets, "bialgebra")?, f)?;
            let r = bialgebra_check(&q, f.max_len);
            let mut summary = format!(
                "criterion {}; Δ multiplicative on paths of length ≤ {}: {}",
                if r.criterion { "holds" } else { "fails" },
                f.max_len,
                yes_no(r.multiplicative)
            );
            if let Some((a, b)) = &r.failing_pair {
                let _ = write!(summary, "; witness pair ({a}, {b})");
            }
            if !r.agree {
                summary.push_str("; criterion and computation disagree");
            }
            Ok(Report::new(verb, r.multiplicative, summary, to_value(&r)))
        }
        CheckName::Prop41 => {
            let p = load_poset(one_target(targets, "prop41")?, f)?;
            let r = check_phi(&p);
            let ok = r.morphism && r.injective && r.agree;
            let summary = format!(
                "φ morphism {}, injective {}; surjective {} and unique paths {}",
                yes_no(r.morphism),
                yes_no(r.injective),
                yes_no(r.surjective),
                yes_no(r.unique_paths)
            );
            Ok(Report::new(verb, ok, summary, to_value(&r)))
        }
        CheckName::Thm42 => {
            let p = load_poset(one_target(targets, "thm42")?, f)?;
            let r = lib(theta_incidence_iso_check(&p))?;
            let summary = format!(
                "θ onto the finite dual of the incidence algebra: {} (dimension {})",
                yes_no(r.iso),
                r.dim
            );
            Ok(Report::new(verb, r.iso, summary, to_value(&r)))
        }
        CheckName::Thm43 => {
            let arg = one_target(targets, "thm43")?;
            let r = match load(arg)? {
                Target::Poset(p) => incidence_semiperfect_check(PosetOrFamily::Poset(&p), f.max_len),
                Target::PosetFamily(fam) => incidence_semiperfect_check(PosetOrFamily::Family(fam), f.max_len),
                Target::Quiver(_) => return Err(InputError::plain(format!("{arg}: expected a poset"))),
            };
            let certificates: Vec<Value> = r
                .certificates
                .iter()
                .map(|c| {
                    json!({
                        "target": [c.target.0, c.target.1],
                        "elements": c.elements.iter().map(|e| [e.0, e.1]).collect::<Vec<_>>(),
                        "functionals": c.functionals.iter().map(|e| [e.0, e.1]).collect::<Vec<_>>(),
                        "verified": c.verified,
                    })
                })
                .collect();
            let ok = r.holds && r.all_verified();
            Ok(Report::new(
                verb,
                ok,
                format!("{} ({} certificates)", r.explanation, r.certificates.len()),
                json!({ "holds": r.holds, "explanation": r.explanation, "checked_on": r.checked_on, "certificates": certificates }),
            ))
        }
        CheckName::Coreflexive => {
            let descriptions = targets
                .iter()
                .map(|t| {
                    Ok(match load(t)? {
                        Target::Quiver(QuiverInput::Finite(q)) => CoalgebraDescription::Quiver(q),
                        Target::Quiver(QuiverInput::Family { family, .. }) => CoalgebraDescription::Family(family),
                        Target::Poset(p) => CoalgebraDescription::Poset(p),
                        Target::PosetFamily(p) => CoalgebraDescription::PosetFamily(p),
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let c = descriptions
                .into_iter()
                .reduce(|a, b| CoalgebraDescription::Tensor(Box::new(a), Box::new(b)))
                .ok_or_else(|| InputError::plain("`check coreflexive` needs at least one input"))?;
            let v = coreflexivity_verdict(&c);
            let word = match v.verdict {
                Coreflexivity::Coreflexive => "coreflexive",
                Coreflexivity::NotCoreflexive => "not coreflexive",
                Coreflexivity::Unknown => "undetermined",
            };
            Ok(Report::new(
                verb,
                v.verdict == Coreflexivity::Coreflexive,
                format!("{}: {word}", c.describe()),
                to_value(&v),
            ))
        }
        CheckName::Prop32 => {
            let q = load_quiver(one_target(targets, "prop32")?, f)?;
            let r = lib(check_prop32_equivalence(&q))?;
            let summary = format!(
                "acyclic with finitely many arrows: {}; finitely many paths on every finite vertex set: {}",
                yes_no(r.structural),
                yes_no(r.finite_paths_on_subsets)
            );
            Ok(Report::new(verb, r.agree, summary, to_value(&r)))
        }
        CheckName::Thm57 => {
            let input = load_quiver_input(one_target(targets, "thm57")?)?;
            let refl = with_target(&input, reflexivity_verdict);
            let gamma = with_target(&input, gamma_membership);
            Ok(Report::new(
                verb,
                refl.reflexive,
                format!(
                    "{}; {}",
                    if refl.reflexive { "reflexive" } else { "proper, not reflexive" },
                    refl.explanation
                ),
                json!({
                    "proper": refl.proper,
                    "reflexive": refl.reflexive,
                    "explanation": refl.explanation,
                    "gamma_in_image": gamma.in_image,
                    "gamma_reason": gamma.reason,
                }),
            ))
        }
    }
}
