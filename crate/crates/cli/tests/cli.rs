use std::path::PathBuf;
use std::process::{Command, Output};

use pathco_cli::Report;

const A3: &str = "quiver\nvertex u\nvertex v\nvertex w\narrow x u v\narrow y v w\n";
const DIAMOND: &str = "poset\nelement a\nelement b\nelement c\nelement d\ncover a b\ncover a c\ncover b d\ncover c d\n";

fn fixture(name: &str, text: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("pathco-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn pathco(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathco")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = pathco(&all);
    let text = stdout(&o);
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, text, "report does not round-trip");
    (o.status.code().unwrap(), report)
}

#[test]
fn paths_lists_every_path_of_a3() {
    let q = fixture("a3.txt", A3);
    let (code, r) = json(&["paths", &q]);
    assert_eq!(code, 0);
    assert_eq!(r.data["paths"], serde_json::json!(["u", "v", "w", "x", "y", "x.y"]));
    assert_eq!(r.data["exhaustive"], true);
}

#[test]
fn family_paths_are_truncated() {
    let (code, r) = json(&["paths", "family:loop", "--max-len", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["paths"], serde_json::json!(["v", "x", "x.x", "x.x.x"]));
    assert_eq!(r.data["exhaustive"], false);
}

#[test]
fn delta_of_a_length_two_path() {
    let q = fixture("a3.txt", A3);
    let (code, r) = json(&["delta", &q, "[x.y]"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["delta"], "[u|x.y] + [x|y] + [x.y|w]");
    assert_eq!(r.data["counit"], "0");
}

#[test]
fn mul_respects_the_field() {
    let q = fixture("a3.txt", A3);
    let (_, r) = json(&["mul", &q, "3*[x]", "2*[y]"]);
    assert_eq!(r.data["product"], "6*[x.y]");
    let (_, r) = json(&["mul", &q, "3*[x]", "2*[y]", "--field", "fp:5"]);
    assert_eq!(r.data["product"], "[x.y]");
    let (_, r) = json(&["mul", &q, "[y]", "[x]"]);
    assert_eq!(r.data["product"], "0");
}

#[test]
fn conv_of_dual_basis_vectors() {
    let q = fixture("a3.txt", A3);
    let (code, r) = json(&["conv", &q, "dual{[x]:1}", "dual{[y]:-1/2}"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["values"], serde_json::json!(["x.y ↦ -1/2"]));
}

#[test]
fn alpha_and_product() {
    let q = fixture("a3.txt", A3);
    let (code, r) = json(&["product", &q, &q]);
    assert_eq!(code, 0);
    assert_eq!((r.data["vertices"].as_u64(), r.data["arrows"].as_u64()), (Some(9), Some(12)));
    let (code, r) = json(&["alpha", &q, &q, "[x|y]"]);
    assert_eq!(code, 0);
    assert!(r.data["morphism"].as_bool().unwrap() && r.data["injective"].as_bool().unwrap());
    // two shuffles of one step in each direction
    assert_eq!(r.data["image"].as_str().unwrap().matches('[').count(), 2);
}

#[test]
fn phi_sends_an_interval_to_its_hasse_paths() {
    let p = fixture("diamond.txt", DIAMOND);
    let (code, r) = json(&["phi", &p, "[a,d]"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["image"], "[a<b.b<d] + [a<c.c<d]");
    assert_eq!(r.data["surjective"], false);
}

#[test]
fn factor_perp_on_a3() {
    let q = fixture("a3.txt", A3);
    let (code, r) = json(&["factor-perp", &q, "dual{[x.y]:1, [w]:3}", "[u]"]);
    assert_eq!(code, 0, "{}", r.summary);
    assert_eq!(r.data["identity_holds"], true);
    assert_eq!(r.data["vanish_on_w"], true);
}

#[test]
fn factor_perp_rejects_eta_outside_the_perp() {
    let q = fixture("a3.txt", A3);
    let o = pathco(&["factor-perp", &q, "dual{[u]:1}", "[u]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rep_locnilp_on_a_loop() {
    let q = fixture("loop.txt", "quiver\nvertex v\narrow x v v\n");
    let nil = fixture("nil.txt", "rep\ndim v 2\nmap x 0 1 ; 0 0\n");
    let id = fixture("id.txt", "rep\ndim v 1\nmap x 1\n");
    let (code, r) = json(&["rep-locnilp", &q, &nil]);
    assert_eq!(code, 0);
    assert_eq!(r.data["nilpotent"], true);
    let (_, r) = json(&["rep-locnilp", &q, &id]);
    assert_eq!(r.data["nilpotent"], false);
}

#[test]
fn iso_check_on_the_loop_names_the_eval_witness() {
    let o = pathco(&["check", "thm33", "family:loop", "--codim-bound", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("theta not surjective; witness rule:eval(1, x)"));
    let q = fixture("a3.txt", A3);
    let (code, r) = json(&["check", "thm33", &q]);
    assert_eq!(code, 0);
    assert_eq!(r.data["dim_image"], 6);
}

#[test]
fn check_verbs_exit_codes() {
    let q = fixture("a3.txt", A3);
    let arrow = fixture("arrow.txt", "quiver\nvertex u\nvertex v\narrow x u v\n");
    let p = fixture("diamond.txt", DIAMOND);
    let cases: [(&[&str], i32); 12] = [
        (&["check", "bialgebra", &q], 1),
        (&["check", "prop41", &p], 0),
        (&["check", "thm42", &p], 0),
        (&["check", "thm43", &p], 0),
        (&["check", "prop32", &q], 0),
        (&["check", "prop32", "family:cycle:2"], 0),
        (&["check", "semiperfect", &q], 0),
        (&["check", "semiperfect", "family:cycle:2"], 1),
        (&["check", "coreflexive", &q], 0),
        (&["check", "coreflexive", "family:star51"], 1),
        (&["check", "thm57", &arrow], 0),
        (&["check", "thm57", "family:loop"], 1),
    ];
    for (args, code) in cases {
        let (got, r) = json(args);
        assert_eq!(got, code, "{args:?}: {}", r.summary);
        assert_eq!(r.ok, code == 0);
    }
}

#[test]
fn counterexamples() {
    let (code, r) = json(&["counterexample", "cycle", "family:cycle:2", "--max-len", "8"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["codimension"], 4);
    assert_eq!(r.data["monomial"]["verdict"], "no_up_to_bound");
    let (code, r) = json(&["counterexample", "multiarrow", "--max-len", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["codimension"], 3);
}

#[test]
fn suites_are_deterministic() {
    let a = pathco(&["suite", "lemma58", "--seed", "7", "--json"]);
    let b = pathco(&["suite", "lemma58", "--seed", "7", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (_, r) = json(&["suite", "prop41", "--seed", "7"]);
    assert!(r.ok);
    assert_eq!(r.data["seed"], 7);
}

#[test]
fn unknown_suite_is_an_input_error() {
    let o = pathco(&["suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let bad = fixture("bad.txt", "quiver\nvertex u\narrow x u q\n");
    let o = pathco(&["paths", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.txt:3:11:"), "{err}");
    let (code, r) = json(&["paths", &bad]);
    assert_eq!(code, 2);
    assert_eq!((r.data["error"]["line"].as_u64(), r.data["error"]["column"].as_u64()), (Some(3), Some(11)));
}

#[test]
fn bad_expressions_and_flags() {
    let q = fixture("a3.txt", A3);
    assert_eq!(pathco(&["delta", &q, "[x.z]"]).status.code(), Some(2));
    assert_eq!(pathco(&["delta", &q, "2*[x"]).status.code(), Some(2));
    assert_eq!(pathco(&["paths", &q, "--field", "fp:6"]).status.code(), Some(2));
    assert_eq!(pathco(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pathco(&["paths", "/nonexistent/file"]).status.code(), Some(2));
}
