use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn globhom(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_globhom"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let (code, text) = globhom(&all);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn groups(report: &Value) -> Vec<(i64, String)> {
    report["result"]["homology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| (h["degree"].as_i64().unwrap(), h["group"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn homology_of_the_cube_vanishes() {
    let (code, r) = structured(&["homology", "--theory", "gl", "--max-degree", "2", "cube3.doc"]);
    assert_eq!(code, 0);
    let g = groups(&r);
    assert!(g.contains(&(1, "0".into())) && g.contains(&(2, "0".into())), "{g:?}");
    assert_eq!(r["truncation"], 4);
    assert_eq!(r["caps"]["element_cap"], 200_000);
}

#[test]
fn compare_shows_the_old_cycle() {
    let (code, r) = structured(&["compare", "cube3.doc", "--truncation", "3"]);
    assert_eq!(code, 0);
    let row = r["result"]["homology"]
        .as_array()
        .unwrap()
        .iter()
        .find(|h| h["degree"] == 2)
        .unwrap()
        .clone();
    assert_ne!(row["old_gl"], "0");
    assert_eq!(row["gl"], "0");
}

#[test]
fn identity_suite_passes() {
    let (code, text) = globhom(&["verify", "--suite", "simplicial-identities", "simplex3.doc"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("pass"));
}

#[test]
fn broken_cut_is_a_violation() {
    let (code, r) = structured(&["verify", "--suite", "h-plus", "cube2.doc", "--truncation", "2"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "violation");
    let (code, _) = structured(&["map", "--kind", "h-plus", "cube2.doc", "--truncation", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn input_errors_exit_with_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{\"kind\": \"cube\",\n \"dim\": \"three\"}}").unwrap();
    let (code, r) = structured(&["build", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("line 2"), "{r}");
    assert_eq!(globhom(&["homology", "missing.doc"]).0, 2);
    assert_eq!(globhom(&["frobnicate"]).0, 2);
    // validated before anything is computed
    assert_eq!(globhom(&["homology", "--max-degree", "5", "cube2.doc"]).0, 2);
    assert_eq!(globhom(&["homology", "--theory", "formal-gl", "--grade", "a,b", "cube2.doc"]).0, 2);
    assert_eq!(globhom(&["nerve", "--theory", "old-gl", "cube2.doc"]).0, 2);
}

#[test]
fn caps_exit_with_three() {
    let (code, r) = structured(&["nerve", "--theory", "minus", "cube3.doc", "--truncation", "3", "--element-cap", "500"]);
    assert_eq!(code, 3);
    assert_eq!(r["caps"]["nerve_cap"], 500);
    assert_eq!(globhom(&["build", "cube3.doc", "--element-cap", "10"]).0, 3);
}

#[test]
fn every_theory_runs() {
    for t in [
        "gl",
        "minus",
        "plus",
        "old-gl",
        "formal-gl",
        "formal-minus",
        "formal-plus",
        "reduced-gl",
        "reduced-minus",
        "reduced-plus",
    ] {
        let (code, r) = structured(&["homology", "--theory", t, "--truncation", "3", "cube2.doc"]);
        assert_eq!(code, 0, "{t}");
        let g = groups(&r);
        assert!(g.iter().filter(|(p, _)| *p >= 1).all(|(_, h)| h == "0"), "{t}: {g:?}");
    }
}

#[test]
fn grades_and_conventions() {
    let (_, r) = structured(&["homology", "--grade", "beta,gamma", "--max-degree", "1", "subdivision-left.doc"]);
    assert_eq!(groups(&r)[1], (1, "Z".into()));
    let (_, r) = structured(&["homology", "--theory", "old-gl", "--degree-zero", "sum", "false-cycle.doc"]);
    assert_eq!(groups(&r)[1], (1, "Z".into()));
    let (_, r) = structured(&["homology", "--theory", "old-gl", "false-cycle.doc"]);
    assert_eq!(groups(&r)[1], (1, "0".into()));
}

#[test]
fn build_round_trips_and_exports() {
    let (code, r) = structured(&["build", "--export", "simplex3.doc"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["round_trip"], true);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", r["result"]["presentation"]).unwrap();
    let (code, again) = structured(&["build", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(again["result"]["counts"], r["result"]["counts"]);
}

#[test]
fn reports_are_deterministic() {
    let a = globhom(&["verify", "--suite", "all", "cube2.doc", "--truncation", "3"]);
    let b = globhom(&["verify", "--suite", "all", "cube2.doc", "--truncation", "3"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0, "{}", a.1);
}

#[test]
fn fold_inspection() {
    let (code, r) = structured(&["map", "--kind", "fold", "--element", "A", "globe2.doc", "--truncation", "1"]);
    assert_eq!(code, 0);
    let rows = r["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["degree"], 1);
    // the fold of a 3-cell needs degree 2
    let (code, _) = structured(&["map", "--kind", "fold", "--element", "A", "globe3.doc", "--truncation", "1"]);
    assert_eq!(code, 2);
    let (code, _) = structured(&["map", "--kind", "fold", "--element", "A", "globe3.doc", "--truncation", "2"]);
    assert_eq!(code, 0);
}
