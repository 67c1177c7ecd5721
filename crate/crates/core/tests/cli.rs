//! End-to-end CLI tests: exit codes, output determinism, and the JSON wire
//! format.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-spectrum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn compute_defaults_text() {
    let out = run(&["compute"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lambda1 = 8/1"));
    assert!(text.contains("kappa   = 8/1"));
    assert!(text.contains("verdict: HamiltonianStable"));
    assert!(text.contains("attained at degrees k = 4, 6"));
}

#[test]
fn compute_json_is_byte_identical_across_runs() {
    let first = run(&["compute", "--format", "json"]);
    let second = run(&["compute", "--format", "json"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let value: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(value["lambda1"], "8/1");
    assert_eq!(value["kappa"], "8/1");
    assert_eq!(value["verdict"], "HamiltonianStable");
    assert_eq!(value["attaining_k"], serde_json::json!([4, 6]));
    assert_eq!(value["c_cas"], "8/3");
    assert_eq!(value["gram"][0][0], "9/8");
    assert_eq!(value["gram"][1][1], "3/8");
    assert_eq!(value["q"][1][1], "8/3");
    assert_eq!(value["r"][0][0], "-16/9");
    assert_eq!(value["lines"][0]["k"], 4);
    assert_eq!(value["lines"][0]["laplace_eigenvalue"], "8/1");
    assert_eq!(value["lines"][0]["multiplicity"], 5);
    assert_eq!(value["lines"][1]["k"], 6);
    assert_eq!(value["lines"][1]["d_eigenvalue"], "-36/1");
    assert_eq!(value["lines"][1]["multiplicity"], 7);
    assert_eq!(value["config_echo"]["u"], "1/2");

    // the schema's top-level keys appear in fixed declaration order
    let raw = stdout(&first);
    let positions: Vec<usize> = [
        "\"lambda1\":",
        "\"kappa\":",
        "\"verdict\":",
        "\"attaining_k\":",
        "\"lines\":",
        "\"gram\":",
        "\"q\":",
        "\"c_cas\":",
        "\"r\":",
        "\"notes\":",
        "\"config_echo\":",
    ]
    .iter()
    .map(|key| {
        raw.find(key)
            .unwrap_or_else(|| panic!("missing key {}", key))
    })
    .collect();
    assert!(
        positions.windows(2).all(|w| w[0] < w[1]),
        "key order drifted"
    );
}

#[test]
fn compute_explicit_defaults_match_builtin_defaults() {
    let explicit = run(&[
        "compute",
        "--curvature",
        "4",
        "--form",
        "1,0,0,1",
        "--gen",
        "zeta24^4,0;0,zeta24^-4",
        "--gen",
        "0,i;i,0",
        "--u",
        "1/2",
        "--format",
        "json",
    ]);
    assert!(explicit.status.success());
    let implicit = run(&["compute", "--format", "json"]);
    let ev: serde_json::Value = serde_json::from_slice(&explicit.stdout).unwrap();
    let iv: serde_json::Value = serde_json::from_slice(&implicit.stdout).unwrap();
    assert_eq!(ev["lambda1"], iv["lambda1"]);
    assert_eq!(ev["gram"], iv["gram"]);
    assert_eq!(ev["lines"], iv["lines"]);
}

#[test]
fn curvature_override_educates() {
    let out = run(&["compute", "--curvature", "2", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["lambda1"], "8/1");
    assert_eq!(value["kappa"], "4/1");
    assert_eq!(value["verdict"], "HamiltonianStable");
    let notes = value["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("unit-sphere submersion")));
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("exceeds kappa")));
}

#[test]
fn invalid_configuration_exits_one() {
    for args in [
        vec!["compute", "--curvature", "-4"],
        vec!["compute", "--curvature", "x"],
        vec!["compute", "--u", "0"],
        vec!["compute", "--form", "0,0,0,0"],
        vec!["compute", "--form", "1,0,1"],
        vec!["compute", "--gen", "1,0;0,2"],
        vec!["compute", "--gen", "1,0;0"],
        vec!["compute", "--format", "yaml"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "args {:?}", args);
    }
}

#[test]
fn internal_invariant_violations_exit_two() {
    // trivial isotropy claim: stabilizer passes, splitting certificate fails
    let out = run(&["compute", "--gen", "1,0;0,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("splitting"), "stderr: {}", err);
    // horizon too small to certify
    let out = run(&["compute", "--max-k", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_paper_passes_and_is_deterministic() {
    let out = run(&["verify-paper"]);
    assert!(
        out.status.success(),
        "verify-paper failed: {}",
        stdout(&out)
    );
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
    let json = run(&["verify-paper", "--format", "json"]);
    assert!(json.status.success());
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["all_pass"], true);
    let again = run(&["verify-paper", "--format", "json"]);
    assert_eq!(json.stdout, again.stdout);
}

#[test]
fn verify_paper_refuses_tiny_horizon() {
    let out = run(&["verify-paper", "--max-k", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("refusing"), "stderr: {}", err);
}
