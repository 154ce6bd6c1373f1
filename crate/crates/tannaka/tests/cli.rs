//! End-to-end tests of the command-line interface: exit codes, output
//! determinism, and the global flags.

use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tannaka"))
        .args(args)
        .output()
        .expect("cli runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("cli exits normally")
}

fn write_temp(name: &str, value: &serde_json::Value) -> String {
    let path = std::env::temp_dir().join(format!("tannaka-cli-test-{name}"));
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn mutated(name: &str, f: impl FnOnce(&mut serde_json::Value)) -> String {
    let text = std::fs::read_to_string(fixture("fixture_s.json")).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    f(&mut value);
    write_temp(name, &value)
}

// --------------------------------------------------------------------------
// exit codes
// --------------------------------------------------------------------------

#[test]
fn validate_well_formed_model_exits_zero() {
    let out = run(&["validate", &fixture("fixture_s.json")]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("well-formed: yes"), "{text}");
}

#[test]
fn check_failing_suite_exits_one() {
    let out = run(&["check", &fixture("fixture_w.json"), "--suite", "hopf"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result: FAIL"), "{text}");
}

#[test]
fn check_passing_suite_exits_zero() {
    let out = run(&["check", &fixture("fixture_w.json"), "--suite", "weak-hopf"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn malformed_json_exits_two() {
    let path = std::env::temp_dir().join("tannaka-cli-test-garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
}

#[test]
fn wrong_matrix_shape_exits_two() {
    // lax0 must be dim(e)×1; hand it a 3-entry column instead
    let path = mutated("bad-shape.json", |v| {
        v["functor"]["lax0"] = serde_json::json!([["1"], ["1"], ["1"]]);
    });
    let out = run(&["validate", &path]);
    assert_eq!(code(&out), 2);
}

#[test]
fn ill_typed_term_exits_two() {
    let out = run(&["eval", &fixture("fixture_s.json"), "--term", "mu ; mu"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unparseable_term_exits_two() {
    let out = run(&["eval", &fixture("fixture_s.json"), "--term", "mu ;"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn broken_duality_exits_three() {
    // a defective unit laxator makes the induced evaluation/coevaluation fail
    // the snake identity, so antipode construction must abort
    let defect_text = std::fs::read_to_string(fixture("defect_s_w0_zero.json")).unwrap();
    let mut defect: serde_json::Value = serde_json::from_str(&defect_text).unwrap();
    let base_text = std::fs::read_to_string(fixture("fixture_s.json")).unwrap();
    let base: serde_json::Value = serde_json::from_str(&base_text).unwrap();
    defect["category"]["duals"] = base["category"]["duals"].clone();
    let path = write_temp("broken-duals.json", &defect);
    let out = run(&["reconstruct", &path]);
    assert_eq!(code(&out), 3);
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
}

#[test]
fn reconstruct_malformed_tables_exits_two() {
    // a morphism matrix with the wrong shape for its boundary
    let path = mutated("bad-tables.json", |v| {
        v["functor"]["morphisms"]["id_g"] = serde_json::json!([["1", "0"], ["0", "1"]]);
    });
    let out = run(&["reconstruct", &path]);
    assert_eq!(code(&out), 2);
}

// --------------------------------------------------------------------------
// determinism
// --------------------------------------------------------------------------

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["--format", "json", "reconstruct", &fixture("fixture_w.json")],
        vec!["--format", "json", "check", &fixture("fixture_s.json"), "--suite", "all"],
        vec!["--format", "json", "eval", &fixture("fixture_w.json"), "--term", "eta ; eps"],
        vec!["validate", &fixture("fixture_s3.json")],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "nondeterministic output for {args:?}");
        assert_eq!(code(&first), code(&second));
    }
}

#[test]
fn reconstruct_writes_file_identical_to_stdout() {
    let out_path = std::env::temp_dir().join("tannaka-cli-test-recon-out.json");
    let to_file = run(&[
        "reconstruct",
        &fixture("fixture_s.json"),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&to_file), 0);
    let text = String::from_utf8(to_file.stdout).unwrap();
    assert!(text.starts_with("dim E_F = 2; wrote "), "{text}");
    let written = std::fs::read_to_string(&out_path).unwrap();
    let to_stdout = run(&["reconstruct", &fixture("fixture_s.json")]);
    assert_eq!(written, String::from_utf8(to_stdout.stdout).unwrap());
}

// --------------------------------------------------------------------------
// global flags
// --------------------------------------------------------------------------

#[test]
fn format_json_eval_document() {
    let out = run(&[
        "--format",
        "json",
        "eval",
        &fixture("fixture_w.json"),
        "--term",
        "eta ; eps",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["matrix"], serde_json::json!([["2"]]));
    assert_eq!(doc["source"], "k");
    assert_eq!(doc["target"], "k");
    assert_eq!(doc["term"], "eta ; eps");
}

#[test]
fn named_terms_resolve_from_the_model() {
    let out = run(&[
        "--format",
        "json",
        "eval",
        &fixture("fixture_s.json"),
        "--term",
        "counit-of-unit",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["matrix"], serde_json::json!([["1"]]));
}

#[test]
fn mu_order_flag_transposes_multiplication() {
    // on a commutative example both orders agree; on Mat₂ they differ
    let left = run(&[
        "--format",
        "json",
        "--mu-order",
        "left-acts-outer",
        "reconstruct",
        &fixture("fixture_w.json"),
    ]);
    let right = run(&[
        "--format",
        "json",
        "--mu-order",
        "right-acts-outer",
        "reconstruct",
        &fixture("fixture_w.json"),
    ]);
    assert_eq!(code(&left), 0);
    assert_eq!(code(&right), 0);
    let l: serde_json::Value = serde_json::from_slice(&left.stdout).unwrap();
    let r: serde_json::Value = serde_json::from_slice(&right.stdout).unwrap();
    assert_eq!(l["mu_order"], "left-acts-outer");
    assert_eq!(r["mu_order"], "right-acts-outer");
    assert_ne!(l["mu"], r["mu"]);
    // opposite multiplication: μ_right(s⊗t) = μ_left(t⊗s); both are
    // associative, so the monoid suite passes either way
    let check = run(&[
        "--mu-order",
        "right-acts-outer",
        "check",
        &fixture("fixture_w.json"),
        "--suite",
        "monoid",
    ]);
    assert_eq!(code(&check), 0);
}

#[test]
fn bad_flag_values_are_rejected() {
    let out = run(&["check", &fixture("fixture_s.json"), "--suite", "nonsense"]);
    assert_eq!(code(&out), 2);
    let out = run(&["--mu-order", "sideways", "validate", &fixture("fixture_s.json")]);
    assert_eq!(code(&out), 2);
}
