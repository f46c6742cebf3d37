use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewfield"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (code, json)
}

fn verdict<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["verdicts"].as_array().unwrap().iter().find(|v| v["name"] == name).unwrap_or_else(|| panic!("no verdict {name}"))
}

fn verdicts<'a>(r: &'a Value, name: &'a str) -> impl Iterator<Item = &'a Value> {
    r["verdicts"].as_array().unwrap().iter().filter(move |v| v["name"] == name)
}

#[test]
fn jacobi_on_zassenhaus_passes() {
    let (code, r) = report(&["check", "jacobi", "--zassenhaus", "3", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["pass"], true);
    assert_eq!(verdict(&r, "jacobi identity")["value"]["holds"], true);
}

#[test]
fn corrupted_table_reports_witness() {
    let (code, r) = report(&["check", "jacobi", "--file", "corpus/corrupted.json"]);
    assert_eq!(code, 1);
    let w = &verdict(&r, "jacobi identity")["value"]["witness"];
    assert_eq!(w["indices"].as_array().unwrap().len(), 3);
}

#[test]
fn maximality_conditions_all_true_for_x() {
    let (code, r) = report(&["check", "walrus", "--file", "corpus/symbol3.json", "--torus", "x"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&r, "six conditions agree")["value"], serde_json::json!(vec![true; 6]));
}

#[test]
fn maximality_conditions_all_false_for_trivial_torus() {
    let (code, r) = report(&["check", "walrus", "--file", "corpus/symbol3.json"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&r, "six conditions agree")["value"], serde_json::json!(vec![false; 6]));
}

#[test]
fn torus_accepts_json_elements() {
    let (code, r) = report(&["check", "torus", "--file", "corpus/symbol5.json", "--torus", r#"{"x": "2"}"#]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&r, "[Z(T):Z] = p^rank")["value"], 5);
}

#[test]
fn non_toral_generator_fails() {
    let (code, r) = report(&["check", "torus", "--file", "corpus/symbol3.json", "--torus", "y"]);
    assert_eq!(code, 1);
    assert_eq!(verdict(&r, "y is toral")["pass"], false);
}

#[test]
fn galois_roundtrip_on_symbol3() {
    let (code, r) = report(&["check", "galois-roundtrip", "--file", "corpus/symbol3.json", "--torus", "x"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&r, "group order p^rank")["value"], 3);
}

#[test]
fn specialize_flags_the_vanishing_point() {
    let (code, r) = report(&["specialize", "corpus/symbol3.json", "corpus/span-ux.json", "--seeds", "4"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&r, "certificate")["value"], "u = minor on rows [0], columns [3]");
    let flagged = verdict(&r, "points where dimension drops")["value"].as_array().unwrap().clone();
    assert_eq!(flagged, vec![Value::from("file point 0 (u=0)")]);
    let at_zero = verdicts(&r, "nonzero certificate preserves dimension").next().unwrap();
    assert_eq!(at_zero["value"]["preserved"], false);
    assert_eq!(at_zero["value"]["certificate_value"], "0");
}

#[test]
fn specialize_inseparable_exponent_one() {
    let (code, r) = report(&["specialize", "corpus/symbol3.json", "corpus/field-y.json", "--seeds", "20"]);
    assert_eq!(code, 0);
    let clauses: Vec<_> = verdicts(&r, "purely inseparable exponent bound").collect();
    assert_eq!(clauses.len(), 20);
    assert!(clauses.iter().all(|c| c["value"]["specialized_exponent"] == 1));
}

#[test]
fn specialize_explicit_points() {
    let (code, r) = report(&["specialize", "corpus/symbol3.json", "corpus/field-x.json", "--seeds", "0", "--point", "u=s"]);
    assert_eq!(code, 0);
    assert_eq!(r["inputs"]["points"], serde_json::json!(["u=s"]));
    assert_eq!(verdicts(&r, "Galois input specializes to a split separable polynomial").count(), 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("skewfield-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.json");
    std::fs::write(&empty, r#"{"ext_vars": ["u"], "kind": "subfield", "generators": []}"#).unwrap();
    let bad_coeff = dir.join("bad.json");
    std::fs::write(&bad_coeff, r#"{"ext_vars": ["u"], "kind": "subspace", "generators": [{"x": "w"}]}"#).unwrap();
    let unknown = dir.join("unknown.json");
    std::fs::write(&unknown, r#"{"ext_vars": ["u"], "kind": "subspace", "generators": [{"z": "1"}]}"#).unwrap();
    for args in [
        vec!["specialize", "corpus/symbol3.json", empty.to_str().unwrap()],
        vec!["specialize", "corpus/symbol3.json", bad_coeff.to_str().unwrap()],
        vec!["specialize", "corpus/symbol3.json", unknown.to_str().unwrap()],
        vec!["specialize", "corpus/symbol3.json", "corpus/span-ux.json", "--point", "v=1"],
        vec!["check", "walrus", "--file", "corpus/missing.json"],
        vec!["check", "walrus", "--file", "corpus/gl2.json"],
        vec!["check", "torus", "--zassenhaus", "3", "1"],
        vec!["check", "jacobi", "--zassenhaus", "2", "1"],
        vec!["envelope", "corpus/matrix-m.json", "corpus/zassenhaus-3-2.json"],
        vec!["envelope", "corpus/matrix-m.json", "corpus/gl2.json", "--degree", "2"],
        vec!["envelope", "corpus/filiform5.json", "corpus/gl2.json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn envelope_of_filiform_passes() {
    let (code, r) = report(&["envelope", "corpus/filiform5.json", "corpus/gl6.json", "--degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&r, "chain length q")["value"], 1);
    assert_eq!(verdict(&r, "L is restrictable")["value"], false);
    assert_eq!(verdict(&r, "U(L) u-monomials independent up to the degree bound")["value"]["rank"], 210);
}

#[test]
fn envelope_of_restricted_algebra_is_vacuous() {
    let (code, r) = report(&["envelope", "corpus/solvable2.json", "corpus/solvable2.json"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&r, "chain length q")["value"], 0);
    assert_eq!(verdict(&r, "u variables")["value"], serde_json::json!([]));
    assert_eq!(r["inputs"]["degree"], 4);
}

#[test]
fn reports_are_deterministic() {
    let args = ["specialize", "corpus/symbol3.json", "corpus/field-x-pole.json", "--seeds", "5", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["envelope", "corpus/matrix-m.json", "corpus/gl2.json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn timings_are_opt_in() {
    let (_, plain) = report(&["envelope", "corpus/matrix-m.json", "corpus/gl2.json"]);
    assert!(plain.get("timings").is_none());
    let (_, timed) = report(&["envelope", "corpus/matrix-m.json", "corpus/gl2.json", "--timings"]);
    assert!(timed["timings"]["chain"].is_number());
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("skewfield-out-{}.json", std::process::id()));
    let out = run(&["check", "jacobi", "--zassenhaus", "5", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["inputs"]["zassenhaus"], serde_json::json!([5, 1]));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn corpus_list_names_every_entry() {
    let out = run(&["corpus", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for e in skewfield::corpus::ENTRIES {
        assert!(text.lines().any(|l| l.starts_with(e.name)), "{}", e.name);
    }
}

/// Golden reports, compared as parsed JSON.
#[test]
fn golden_reports() {
    let cases: &[(&str, &[&str])] = &[
        ("jacobi-w31.json", &["check", "jacobi", "--zassenhaus", "3", "1"]),
        ("jacobi-corrupted.json", &["check", "jacobi", "--file", "corpus/corrupted.json"]),
        ("walrus-symbol3-x.json", &["check", "walrus", "--file", "corpus/symbol3.json", "--torus", "x"]),
        ("roundtrip-symbol3-x.json", &["check", "galois-roundtrip", "--file", "corpus/symbol3.json", "--torus", "x"]),
        ("torus-symbol3-x.json", &["check", "torus", "--file", "corpus/symbol3.json", "--torus", "x"]),
        ("specialize-span-ux.json", &["specialize", "corpus/symbol3.json", "corpus/span-ux.json", "--seeds", "5"]),
        ("specialize-field-y.json", &["specialize", "corpus/symbol3.json", "corpus/field-y.json", "--seeds", "20"]),
        ("envelope-filiform5.json", &["envelope", "corpus/filiform5.json", "corpus/gl6.json", "--degree", "4"]),
        ("envelope-solvable2.json", &["envelope", "corpus/solvable2.json", "corpus/solvable2.json"]),
    ];
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/reports");
    for (file, args) in cases {
        let expected: Value = serde_json::from_str(&std::fs::read_to_string(dir.join(file)).unwrap()).unwrap();
        let (_, actual) = report(args);
        assert_eq!(actual, expected, "{file}");
    }
}
