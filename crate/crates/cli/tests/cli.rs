use std::process::{Command, Output};

use hyperspec::families::{build, FamilySpec};
use hyperspec::spectral::{spectral_radius, SolverChoice, DEFAULT_TOL};
use serde_json::Value;

fn hyperspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperspec"))
        .args(args)
        .env_remove("HYPERSPEC_TOL")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn family_then_rho_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c2.json");
    let out = hyperspec(&["--quiet", "family", "c2", "3", "-o", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let out = hyperspec(&["rho", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let got = json_of(&out);
    assert_eq!(got["method"], "power-iteration");
    assert!((got["rho"].as_f64().unwrap() - 2.0 * 4f64.powf(1.0 / 3.0)).abs() < 1e-8);

    let h = build(&FamilySpec::C2 { r: 3 }).unwrap().into_hypergraph();
    let lib = spectral_radius::<f64>(&h, DEFAULT_TOL, SolverChoice::Auto).unwrap();
    assert_eq!(got, serde_json::to_value(lib).unwrap());
}

#[test]
fn tree_method_on_a_hypertree() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.json");
    std::fs::write(&file, r#"{"r": 3, "edges": [[0,1,2],[2,3,4],[4,5,6]]}"#).unwrap();
    let out = hyperspec(&["rho", file.to_str().unwrap(), "--method", "tree", "--tol", "1e-12"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["method"], "hypertree-bisection");
}

#[test]
fn certify_checks_the_labeling() {
    let out = hyperspec(&["certify", "S5_3", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["certificate"]["kind"], "supernormal");
    assert_eq!(v["certificate"]["strict"], true);
    assert_eq!(v["check"]["holds"], true);
}

#[test]
fn dagger_g_reports_the_margin() {
    let out = hyperspec(&["beta", "dagger-g", "1", "1", "4", "5"]);
    let v = json_of(&out);
    assert!((v["value"].as_f64().unwrap() - 0.2365660).abs() < 1e-6);
    assert_eq!(v["verdict"], "admissible");
    let v = json_of(&hyperspec(&["beta", "dagger-g", "1", "1", "4", "6"]));
    assert_eq!(v["verdict"], "inadmissible");
}

#[test]
fn classify_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d.json");
    let out = hyperspec(&["family", "dagger4", "1", "2", "2", "3", "-o", file.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&hyperspec(&["classify", file.to_str().unwrap()]));
    assert_eq!(v["verdict"], "admissible");
    assert_eq!(v["structure"]["category"], "dagger(1,2,2,3)");
}

#[test]
fn enumerate_writes_a_census() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("census.csv");
    let out = hyperspec(&["--quiet", "enumerate", "-r", "3", "-m", "3", "--census", file.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["checked"], 12);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    let mut rdr = csv::Reader::from_path(&file).unwrap();
    assert_eq!(rdr.records().count(), 12);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(hyperspec(&["rho", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, r#"{"r": 3, "edges": [[0, 1]]}"#).unwrap();
    assert_eq!(hyperspec(&["rho", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hyperspec(&["family", "nonesuch"]).status.code(), Some(2));
    assert_eq!(hyperspec(&["frobnicate"]).status.code(), Some(2));
    let good = dir.path().join("p.json");
    assert!(hyperspec(&["family", "path", "3", "2", "-o", good.to_str().unwrap()]).status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_hyperspec"))
        .args(["rho", good.to_str().unwrap()])
        .env("HYPERSPEC_TOL", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_certificate_exits_one() {
    // G3_4 with t = 3 needs k ≥ 9
    let out = hyperspec(&["certify", "G3_4", "3", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "no-certificate");
}

#[test]
fn non_convergence_prints_the_bracket() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cycle.json");
    let out = hyperspec(&["family", "cycle", "3", "6", "-o", file.to_str().unwrap()]);
    assert!(out.status.success());
    let out = hyperspec(&["rho", file.to_str().unwrap(), "--method", "power", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"], "not-converged");
    assert!(v["lower"].as_f64().unwrap() <= v["upper"].as_f64().unwrap());
}

#[test]
fn verify_subcommand_runs_a_subset() {
    let out = hyperspec(&["verify-paper", "--only", "1,3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[0]["passed"].as_bool().unwrap());
    let out = hyperspec(&["verify-paper", "--only", "12"]);
    assert_eq!(out.status.code(), Some(2));
}
