use std::path::PathBuf;
use std::process::{Command, Output};

use hochcyc_core::hochschild::{ActionReport, ComparisonReport, DistinguishVerdict};
use serde_json::Value;

fn fixture_path(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochcyc")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("structured output is JSON")
}

fn dims(args: &[&str]) -> Vec<u64> {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    json(&o)["dims"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect()
}

#[test]
fn check_accepts_valid_specs() {
    for input in [fixture_path("D_Z2.json"), "fixture:D(Z2)".to_string(), fixture_path("S3.json")] {
        let o = run(&["check", &input]);
        assert_eq!(code(&o), 0, "{input}: {}", stdout(&o));
    }
}

#[test]
fn check_names_the_failing_triple() {
    let o = run(&["check", &fixture_path("broken_associativity.json")]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("associativity at (1,1,1)"), "{out}");
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"field": "Q", "dim": 1, "mu": [[0,0,0,1]], "unit": [[0,1]], "colour": 1}"#).unwrap();
    for path in [&garbage, &unknown] {
        let o = run(&["check", path.to_str().unwrap()]);
        assert_eq!(code(&o), 2, "{}", stderr(&o));
    }
    assert_eq!(code(&run(&["check", "/nonexistent/spec.json"])), 2);
    assert_eq!(code(&run(&["check", "fixture:nonsense"])), 2);
    assert_eq!(code(&run(&["hh", "fixture:Q", "--field", "Fp:4"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn homology_tables() {
    assert_eq!(dims(&["hh", &fixture_path("Q_Z2.json"), "--max-degree", "2"]), vec![2, 0, 0]);
    assert_eq!(dims(&["hc", "fixture:Q", "--max-degree", "4"]), vec![1, 0, 1, 0, 1]);
    assert_eq!(dims(&["hh", &fixture_path("S3.json")]), vec![3, 0, 0]);
    assert_eq!(dims(&["hd", "fixture:Q[Z3]", "--max-degree", "1"]), dims(&["hd", "fixture:Q[Z3]", "--max-degree", "1"]));
    let table = stdout(&run(&["hh", "fixture:Q[Z2]"]));
    assert!(table.contains("HH_0  2") && table.contains("HH_2  0"), "{table}");
}

#[test]
fn group_spec_builds_the_double_on_request() {
    let z2 = fixture_path("Z2.json");
    assert_eq!(dims(&["hh", &z2, "--double", "--max-degree", "1"]), dims(&["hh", "fixture:D(Z2)", "--max-degree", "1"]));
    assert_eq!(dims(&["hh", &z2, "--max-degree", "1"]), vec![2, 0]);
}

#[test]
fn modular_characteristic_warns_and_changes_homology() {
    let o = run(&["hh", "fixture:Q[Z2]", "--field", "Fp:2", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("divides |G|"));
    assert_eq!(json(&o)["dims"], serde_json::json!([2, 2, 2]));
    // HC needs characteristic 0.
    assert_eq!(code(&run(&["hc", "fixture:Q[Z2]", "--field", "Fp:2"])), 2);
}

#[test]
fn hd_without_involution_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let dual = dir.path().join("dual.json");
    std::fs::write(
        &dual,
        r#"{"field": "Q", "dim": 2, "mu": [[0,0,0,1], [0,1,1,1], [1,0,1,1]], "unit": [[0,1]]}"#,
    )
    .unwrap();
    let o = run(&["hd", dual.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("dihedral"), "{}", stderr(&o));
    assert_eq!(code(&run(&["action", dual.to_str().unwrap()])), 2);
}

#[test]
fn action_on_the_double_of_z2() {
    let o = run(&["action", "fixture:D(Z2)", "--max-degree", "1", "--format", "structured"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: ActionReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report.is_valid());
    let d0 = &report.degrees[0];
    assert!(!d0.twist_is_identity);
    assert_eq!(d0.twist_order, Some(2));
    // The structured output round-trips.
    let again = serde_json::to_value(&report).unwrap();
    assert_eq!(again, json(&o));
}

#[test]
fn compare_verdicts() {
    let o = run(&["compare", "fixture:D(Z2)", "fixture:D(Z2)-trivial-ribbon", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    let r: ComparisonReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.verdict, DistinguishVerdict::Distinguished);
    assert!(r.same_cyclic_matrices);
    assert_eq!(json(&o)["verdict"], "DISTINGUISHED");
    let same = stdout(&run(&["compare", "fixture:Q[S3]", &fixture_path("Q_S3.json")]));
    assert!(same.starts_with("INDISTINGUISHABLE"), "{same}");
}

#[test]
fn size_bound_exits_3() {
    let o = run(&["hh", "fixture:D(S3)", "--max-degree", "2"]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run(&["hh", "fixture:Q", "--max-cells", "2000000"])), 2);
    assert_eq!(code(&run(&["hh", "fixture:Q", "--max-cells", "2000000", "--accept-large"])), 0);
    assert_eq!(dims(&["hh", "fixture:D(S3)", "--max-degree", "1"]), vec![8, 0]);
}

#[test]
fn torus_commands() {
    let o = run(&["torus", "mul", "T", "R"]);
    assert!(stdout(&o).starts_with("((0,1),(0,-1))"));
    let o = run(&["torus", "mul", "(a=0, n=0; x=1/3, eps=+1)", "(a=0, n=2; x=0, eps=+1)"]);
    assert!(stdout(&o).starts_with("((2/3,2),(1/3,1))"), "{}", stdout(&o));
    let o = run(&["torus", "inv", "T", "--format", "structured"]);
    assert_eq!(json(&o)["element"], "(a=0, n=-1; x=0, eps=+1)");
    assert_eq!(stdout(&run(&["torus", "pi0", "T"])), "T-class, SL2 = [[1,0],[1,1]]\n");
    let o = run(&["torus", "selfcheck", "--n", "1000", "--seed", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("pass"));
    assert_eq!(code(&run(&["torus", "inv", "(a=1, n=0; x=0)"])), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["action", "fixture:Q[Z3]", "--format", "structured"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["torus", "selfcheck", "--n", "200", "--seed", "7", "--format", "structured"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
