use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const FLAT: &str = r#"{"schema": 1, "potential": {"kind": "canonical", "polytope": {"dim": 2, "facets": [
    {"normal": ["1", "0"], "offset": "0"}, {"normal": ["0", "1"], "offset": "0"}]}},
    "polytope": {"dim": 2, "facets": [
    {"normal": ["1", "0"], "offset": "0"}, {"normal": ["0", "1"], "offset": "0"},
    {"normal": ["-1", "0"], "offset": "3"}, {"normal": ["0", "-1"], "offset": "3"}]}}"#;

const HIRZEBRUCH: &str = r#"{"schema": 1, "potential": {"kind": "canonical", "polytope": {"dim": 2, "facets": [
    {"normal": ["1", "0"], "offset": "0"}, {"normal": ["0", "1"], "offset": "0"},
    {"normal": ["-1", "0"], "offset": "1"}, {"normal": ["-1", "-1"], "offset": "2"}]}}}"#;

const BROKEN: &str = r#"{"schema": 1, "potential": {"kind": "radial", "n": 2,
    "A": "25", "B": "1", "C": "0", "D": "0",
    "domain": {"n": 2, "lower": {"r": 1, "label": 1}, "upper": null}}}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-kahler"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_scalar_flat() {
    let out = run(&["solve", "--n", "2", "--m", "1", "--a", "1", "--constraint", "C=0", "--constraint", "D=0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "solve");
    for (k, want) in [("A", "0"), ("B", "1"), ("C", "0"), ("D", "0")] {
        assert_eq!(v["profile"][k], want);
    }
    assert_eq!(v["classification"]["flags"]["scalar_flat"], true);
}

#[test]
fn solve_from_document_matches_flags() {
    let doc = r#"{"schema": 1, "spec": {"n": 2, "m": 1, "a": "3/2"}, "constraints": ["D=0", "C=-1"]}"#;
    let a = json(&run(&["solve", "--input", doc]));
    let b = json(&run(&["solve", "--n", "2", "--m", "1", "--a", "3/2", "--constraint", "D=0", "--constraint", "C=-1"]));
    assert_eq!(a["profile"], b["profile"]);
    assert_eq!(a["profile"]["C"], "-1");
}

#[test]
fn dim2_football() {
    let v = json(&run(&["dim2", "--k", "1", "--b", "0", "--c", "1"]));
    assert_eq!(v["case"], "football");
    assert_eq!(v["family"]["domain"]["lo"], -1.0);
    assert_eq!(v["family"]["domain"]["hi"], 1.0);
    assert_eq!(v["angle"].as_f64().unwrap(), PI);
    assert_eq!(v["smooth"], true);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 10);
    for c in checks {
        assert!((c["gauss"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn dim2_negative_arguments() {
    let v = json(&run(&["dim2", "--k", "-1", "--b", "0", "--c", "-1"]));
    assert_eq!(v["case"], "hyperbolic_disc");
    assert_eq!(v["gauss_curvature"], -1.0);
}

#[test]
fn curvature_flat_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "flat.json", FLAT);
    let csv_path = dir.path().join("flat.csv");
    let out = run(&["curvature", "--spec", &spec, "--csv", csv_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["report"]["extremal"], true);
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["x_1", "x_2", "r", "Sc_general", "Sc_closed", "rel_err"]);
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let sc: f64 = rec[3].parse().unwrap();
        assert!(sc.abs() < 1e-6, "{sc}");
        rows += 1;
    }
    assert_eq!(rows, 30);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "h.json", HIRZEBRUCH);
    let args = ["curvature", "--spec", spec.as_str(), "--seed", "7"];
    let first = run(&args).stdout;
    assert_eq!(first, run(&args).stdout);
    let one = bin().args(args).env("TORIC_KAHLER_THREADS", "1").output().unwrap().stdout;
    let four = bin().args(args).env("TORIC_KAHLER_THREADS", "4").output().unwrap().stdout;
    let seq = run(&[&args[..], &["--sequential"]].concat()).stdout;
    assert_eq!(first, one);
    assert_eq!(first, four);
    assert_eq!(first, seq);
    let other_seed = run(&["curvature", "--spec", &spec, "--seed", "8"]).stdout;
    assert_ne!(first, other_seed);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["dim2", "--k", "0", "--b", "1", "--c", "0", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["case"], "cone");
    assert_eq!(v["orbifold_order"], 1);
}

#[test]
fn transform_hirzebruch() {
    let v = json(&run(&["transform", "--spec", HIRZEBRUCH, "--matrix", "1,-1;0,1"]));
    assert!(v["max_congruence_err"].as_f64().unwrap() < 1e-10);
    assert!(v["max_rel_err"].as_f64().unwrap() < 1e-5);
    assert_eq!(v["potential"]["kind"], "pullback");
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
}

#[test]
fn validate_pass_and_fail() {
    let ok = run(&["validate", "--spec", HIRZEBRUCH]);
    assert!(ok.status.success());
    assert_eq!(json(&ok)["report"]["verdict"]["pass"], true);
    let bad = run(&["validate", "--spec", BROKEN]);
    assert_eq!(bad.status.code(), Some(4));
    let v = json(&bad);
    assert_eq!(v["report"]["verdict"]["pass"], false);
    assert!(v["report"]["q_positivity"].as_f64().unwrap() < 0.0);
}

#[test]
fn schema_errors_exit_2() {
    let wrong_version = FLAT.replace("\"schema\": 1", "\"schema\": 2");
    let cases: Vec<Vec<&str>> = vec![
        vec!["curvature", "--spec", &wrong_version],
        vec!["curvature", "--spec", "{\"schema\": 1, \"potential\": {\"kind\": \"cubic\"}}"],
        vec!["curvature", "--spec", "{not json"],
        vec!["solve", "--n", "2", "--m", "1", "--a", "1", "--constraint", "E=0", "--constraint", "D=0"],
        vec!["solve", "--n", "2", "--m", "1", "--a", "-1", "--constraint", "C=0", "--constraint", "D=0"],
        vec!["transform", "--spec", HIRZEBRUCH, "--matrix", "1,0,0;0,1,0;0,0,1"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = bin().args(["dim2", "--k", "1", "--b", "0", "--c", "1"]).env("TORIC_KAHLER_THREADS", "0").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn math_errors_exit_3_with_diagnostics() {
    let out = run(&["dim2", "--k", "1", "--b", "0", "--c", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "math");
    assert!(v["error"]["message"].as_str().unwrap().contains("invalid 2d family"));
    let out = run(&["solve", "--n", "2", "--m", "1", "--a", "1", "--constraint", "C=0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn demo_report() {
    let out = run(&["demo"]);
    assert!(out.status.success());
    let v = json(&out);
    let rows = v["calabi"].as_array().unwrap();
    for case in ["ricci_flat", "scalar_flat", "kahler_einstein", "negative_csc", "fubini_study", "bergman"] {
        assert!(rows.iter().any(|r| r["case"] == case), "{case}");
    }
    for r in rows {
        assert_eq!(r["valid"], true, "{}", r["case"]);
        assert_eq!(r["extremal"], true, "{}", r["case"]);
        assert!(r["max_rel_err"].as_f64().unwrap() < 1e-5);
        if r["case"] != "negative_csc" && !r["matches_closed_form"].is_null() {
            assert_eq!(r["matches_closed_form"], true, "{}", r["case"]);
        }
    }
    let cat = v["catalogue"].as_array().unwrap();
    let names: Vec<&str> = cat.iter().map(|r| r["case"].as_str().unwrap()).collect();
    for case in ["cylinder", "cone", "football", "hyperboloid", "hyperbolic_disc", "cusp"] {
        assert!(names.contains(&case), "{case}");
    }
    assert_eq!(out.stdout, run(&["demo"]).stdout);
}
