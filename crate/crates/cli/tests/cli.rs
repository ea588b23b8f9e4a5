use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn polyreal(cache: &tempfile::TempDir, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyreal"))
        .arg("--cache")
        .arg(cache.path())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_spec(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn stringc_dihedral_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyreal(&dir, &["stringc", "--group", spec("pentagon.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "polyreal/1");
    assert_eq!(v["string_c"], true);
    assert_eq!(v["schlafli"], serde_json::json!([5]));
}

#[test]
fn stringc_negative_answer() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyreal(
        &dir,
        &["stringc", "--group", spec("cube.json").to_str().unwrap(), "--generators", "s1,s0,s2"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["string_c"], false);
}

#[test]
fn cube_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyreal(&dir, &["cone-report", "--group", spec("cube.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "polyreal/1");
    assert_eq!(v["omega"], 8);
    assert_eq!(v["layer_count"], 4);
    assert_eq!(v["gelfand"], "gelfand");
    assert_eq!(v["checks"]["idempotents"], true);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn singleton_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyreal(
        &dir,
        &["cone-report", "--group", spec("cube.json").to_str().unwrap(), "--stabilizer", "s0,s1,s2"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["omega"], 1);
    let sigma = v["sigma"].as_array().unwrap();
    assert_eq!(sigma.len(), 1);
    assert_eq!(sigma[0]["degree"], 1);
}

#[test]
fn psl19_example_has_complex_multiplicity_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyreal(
        &dir,
        &["cone-report", "--group", spec("psl19_example.json").to_str().unwrap(), "--no-products"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["group_order"], 3420);
    assert_eq!(v["stabilizer_order"], 6);
    assert!(v["sigma"].as_array().unwrap().iter().any(|s| s["type"] == "C"
        && s["multiplicity"] == 2
        && s["subcone_dim"] == 4
        && s["degree"] == 18));
}

#[test]
fn h4_cosine_table_is_nine_by_nine() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyreal(&dir, &["cosine", "--group", spec("h4_600cell.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(v["layers"].as_array().unwrap().len(), 9);
    for r in rows {
        assert_eq!(r["vector"], "pure");
        assert_eq!(r["values"].as_array().unwrap().len(), 9);
    }
    let csv = polyreal(&dir, &["--format", "csv", "cosine", "--group", spec("h4_600cell.json").to_str().unwrap()]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 10);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec("cube.json");
    let args = ["cosine", "--group", path.to_str().unwrap()];
    let a = polyreal(&dir, &args);
    let b = polyreal(&dir, &args);
    assert_eq!(a.stdout, b.stdout);
    let fresh = tempfile::tempdir().unwrap();
    assert_eq!(polyreal(&fresh, &args).stdout, a.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(&dir, "bad.json", r#"{"kind":"psl2","p":20,"y":2}"#);
    assert_eq!(polyreal(&dir, &["cone-report", "--group", &bad]).status.code(), Some(2));
    let garbage = write_spec(&dir, "garbage.json", "{not json");
    assert_eq!(polyreal(&dir, &["cone-report", "--group", &garbage]).status.code(), Some(2));
    let word = polyreal(
        &dir,
        &["cone-report", "--group", spec("cube.json").to_str().unwrap(), "--stabilizer", "s7"],
    );
    assert_eq!(word.status.code(), Some(2));
    let cap = polyreal(
        &dir,
        &["--max-order", "100", "cone-report", "--group", spec("psl19_example.json").to_str().unwrap()],
    );
    assert_eq!(cap.status.code(), Some(3));
    assert_eq!(polyreal(&dir, &["no-such-command"]).status.code(), Some(2));
}

#[test]
fn wreath_of_small_base() {
    let dir = tempfile::tempdir().unwrap();
    let base = write_spec(&dir, "s3.json", r#"{"kind":"permutation","degree":3,"generators":[[[0,1]],[[0,1,2]]]}"#);
    let out = polyreal(&dir, &["wreath", "--base", &base]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["wreath_order"], 72);
    assert_eq!(v["wreath_irreducibles"], 9);
    assert_eq!(v["cosines_match"], true);
    assert_eq!(v["gelfand"], "gelfand");
}

#[test]
fn psl_search_lists_types() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyreal(&dir, &["psl-search", "--p", "19"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["order_three"], true);
    assert!(v["types"].as_array().unwrap().iter().any(|t| t["schlafli"] == serde_json::json!([9, 3])));
}

#[test]
fn paper_suite_all_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyreal(&dir, &["--format", "table", "paper-suite"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().count(), 7);
    assert!(!text.contains("FAIL"));
}
