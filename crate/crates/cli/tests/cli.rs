use std::process::{Command, Output};

use serde_json::Value;

fn ybl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybl")).args(args).output().expect("ybl runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ybl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn lyubashenko_validates() {
    let out = ybl(&["solution", "lyubashenko", "--m", "3", "--validate"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["pass"], true);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["nondegenerate", "involutive", "braid"]);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
}

#[test]
fn chain_build_with_charges() {
    let out = ybl(&["chain", "build", "--solution", "trivial:2", "--sites", "3", "--verify-commute", "--closed-forms"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    for want in ["commuting", "h_nm1", "t_n", "t0"] {
        assert!(names.contains(&want), "{want} missing from {names:?}");
    }
}

#[test]
fn malformed_file_exits_two_with_location() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"sigma\": [[0]],\n \"tau\": ").unwrap();
    let out = ybl(&["solution", "validate", "--solution", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json") && err.contains("line 2"), "{err}");
}

#[test]
fn invalid_solution_exits_one() {
    let bad = tmp("not_ybe.json");
    std::fs::write(&bad, r#"{"size": 3, "sigma": [[1,2,0],[1,2,0],[1,2,0]], "tau": [[0,1,2],[0,1,2],[0,1,2]]}"#).unwrap();
    let out = ybl(&["solution", "validate", "--solution", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!((r["pass"].clone(), r["exit_status"].clone()), (Value::Bool(false), Value::from(1)));
    let failed: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.get("witness").is_some()));
}

#[test]
fn failed_hom_exits_one() {
    let out = ybl(&["solution", "hom", "--solution", "lyubashenko:3", "--target", "trivial:3", "--map", "0,1,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(ybl(&["solution", "trivial", "--n", "0"]).status.code(), Some(2));
    assert_eq!(ybl(&["symmetry", "lift", "--solution", "trivial:2", "--matrix", "1,2"]).status.code(), Some(2));
    assert_eq!(ybl(&["chain", "build", "--solution", "trivial:4", "--sites", "9", "--budget", "100"]).status.code(), Some(2));
    assert_eq!(ybl(&["qalgebra", "induce", "--orbit-collapse"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let strip = |out: Output| {
        let mut v = report(&out);
        v.as_object_mut().unwrap().remove("wall_time_s");
        serde_json::to_string(&v).unwrap()
    };
    for args in [
        &["symmetry", "cocycle", "--solution", "brace:scaled:4:2"][..],
        &["qalgebra", "check-rep", "--solution", "lyubashenko:3"][..],
        &["symmetry", "orbit-proj", "--solution", "brace:truncpoly:2:3", "--sites", "2"][..],
    ] {
        assert_eq!(strip(ybl(args)), strip(ybl(args)), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = tmp("report.json");
    let out = ybl(&["qalgebra", "yangian", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["command"], "qalgebra yangian");
    assert_eq!(r["data"]["match"]["same_set"], true);
}

#[test]
fn graded_ablation_fails() {
    let out = ybl(&["qalgebra", "check-rep", "--solution", "trivial:2", "--kind", "graded", "--no-nf"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["checks"][0]["check"], "rep_graded_no_nf");
}

#[test]
fn verify_all_small_corpus() {
    let out = ybl(&["verify-all", "--corpus", "trivial:2,lyubashenko:3", "--max-sites", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let checks = r["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] <= w[1]));
    assert!(names.contains(&"yangian/n=2/yangian_match"));
    assert!(names.iter().any(|n| n.starts_with("lyubashenko:3/N=3/")));
    assert_eq!(r["data"]["entries"].as_array().unwrap().len(), 2);
}
