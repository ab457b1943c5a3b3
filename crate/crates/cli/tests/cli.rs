use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

use qproj_cli::{run, CommandResult, EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};
use qproj_core::fqlinalg::subspace_count;
use qproj_core::geometry::build_projective_space;
use qproj_core::planes::plane_from_geometry;

fn qproj(args: &[&str]) -> CommandResult {
    run(std::iter::once("qproj").chain(args.iter().copied()))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qproj-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn json_out(r: &CommandResult) -> Value {
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn qbinom_prints_coefficients() {
    let r = qproj(&["qbinom", "4", "2"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.stdout, "1 1 2 1 1\n");
    assert_eq!(qproj(&["qbinom", "4", "2", "--at", "2"]).stdout, "35\n");
    assert_eq!(qproj(&["qbinom", "4", "2", "--at", "1"]).stdout, "6\n");
    assert_eq!(qproj(&["qbinom", "4", "2", "--at", "-1"]).stdout, "2\n");
    assert_eq!(qproj(&["qbinom", "3", "5"]).stdout, "0\n");
}

#[test]
fn expand_one_term_per_line() {
    let r = qproj(&["expand", "2"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.stdout, "y^2\n(1 + q)xy\nx^2\n");
    assert_eq!(qproj(&["expand", "5"]).stdout.lines().count(), 6);
}

#[test]
fn subspace_counts_and_lists() {
    assert_eq!(qproj(&["subspaces", "2", "3", "1"]).stdout, "7\n");
    assert_eq!(qproj(&["subspaces", "4", "4", "2"]).stdout, "357\n");
    let listed = qproj(&["subspaces", "3", "3", "2", "--list"]);
    assert_eq!(listed.exit_code, EXIT_OK);
    assert_eq!(listed.stdout.lines().count(), 1 + 13);
    // Beyond the enumeration budget the count still comes from the formula.
    let big = qproj(&["subspaces", "2", "30", "15"]);
    assert_eq!(big.exit_code, EXIT_OK);
    assert_eq!(big.stdout, format!("{}\n", subspace_count(2, 30, 15)));
}

#[test]
fn exit_codes() {
    assert_eq!(qproj(&["subspaces", "6", "2", "1"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["subspaces", "2", "30", "15", "--list"]).exit_code, EXIT_BUDGET);
    assert_eq!(qproj(&["subspaces", "17", "2", "1", "--list"]).exit_code, EXIT_BUDGET);
    assert_eq!(qproj(&["qbinom", "four", "2"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["frobnicate"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["geometry", "build"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["geometry", "build", "--projective", "6", "2"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["geometry", "build", "--projective", "32", "2"]).exit_code, EXIT_BUDGET);
    assert_eq!(qproj(&["geometry", "build", "--boolean", "40"]).exit_code, EXIT_BUDGET);
    assert_eq!(qproj(&["geometry", "check", "/nonexistent/qproj.json"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["plane", "bruck-ryser", "1"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["paths", "gf", "0", "3"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["paths", "gf", "13", "12"]).exit_code, EXIT_BUDGET);
    assert_eq!(qproj(&["group", "order", "xl", "2", "2"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["group", "order", "gl", "2", "6"]).exit_code, EXIT_USAGE);
    assert_eq!(qproj(&["group", "order", "gl", "3", "5", "--brute-force"]).exit_code, EXIT_BUDGET);
    assert_eq!(qproj(&["--help"]).exit_code, EXIT_OK);
}

#[test]
fn build_check_round_trip() {
    let cases: [&[&str]; 8] = [
        &["--projective", "2", "1"],
        &["--projective", "2", "2"],
        &["--projective", "3", "2"],
        &["--projective", "2", "3"],
        &["--projective", "4", "2"],
        &["--projective", "5", "1"],
        &["--boolean", "1"],
        &["--boolean", "4"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let built = qproj(&[&["geometry", "build"], *case].concat());
        assert_eq!(built.exit_code, EXIT_OK, "{case:?}");
        let path = temp_file(&format!("round-trip-{i}"), &built.stdout);
        let checked = qproj(&["geometry", "check", path.to_str().unwrap()]);
        assert_eq!(checked.exit_code, EXIT_OK, "{case:?}\n{}", checked.stdout);
        assert!(checked.stdout.ends_with("verdict: PASS\n"));
        std::fs::remove_file(path).unwrap();
    }
}

fn fano_without_a_line() -> String {
    let built = qproj(&["geometry", "build", "--projective", "2", "2"]);
    let mut doc: Value = serde_json::from_str(&built.stdout).unwrap();
    let subspaces = doc["subspaces"].as_array_mut().unwrap();
    let line = subspaces.iter().position(|s| s["dim"] == 1).unwrap();
    subspaces.remove(line);
    serde_json::to_string(&doc).unwrap()
}

#[test]
fn mutated_fano_fails_with_witness() {
    let path = temp_file("mutant", &fano_without_a_line());
    let r = qproj(&["geometry", "check", path.to_str().unwrap()]);
    assert_eq!(r.exit_code, EXIT_VERIFICATION);
    assert!(r.stdout.contains("[FAIL] 5"), "{}", r.stdout);
    assert!(r.stdout.contains("witness:"));
    assert!(r.stdout.ends_with("verdict: FAIL\n"));

    let j = qproj(&["geometry", "check", path.to_str().unwrap(), "--json"]);
    assert_eq!(j.exit_code, EXIT_VERIFICATION);
    let doc = json_out(&j);
    assert_eq!(doc["status"], "verification_failed");
    assert_eq!(doc["result"]["passed"], false);
    let failed: Vec<&Value> =
        doc["result"]["axioms"]["axioms"].as_array().unwrap().iter().filter(|a| a["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|a| a["witness"].is_object()));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn malformed_geometry_names_the_field() {
    let path = temp_file("malformed", r#"{ "points": ["a"], "subspaces": [ { "dim": "zero", "points": ["a"] } ] }"#);
    let r = qproj(&["geometry", "check", path.to_str().unwrap()]);
    assert_eq!(r.exit_code, EXIT_USAGE);
    assert!(r.stderr.contains("subspaces[0].dim"), "{}", r.stderr);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn collineation_counts() {
    let fano = qproj(&["geometry", "build", "--projective", "2", "2"]).stdout;
    let path = temp_file("collineations", &fano);
    assert_eq!(qproj(&["geometry", "collineations", path.to_str().unwrap()]).stdout, "168\n");
    let big = temp_file("collineations-big", &qproj(&["geometry", "build", "--projective", "3", "2"]).stdout);
    assert_eq!(qproj(&["geometry", "collineations", big.to_str().unwrap()]).exit_code, EXIT_BUDGET);
    std::fs::remove_file(path).unwrap();
    std::fs::remove_file(big).unwrap();
}

#[test]
fn plane_checks() {
    let fano = plane_from_geometry(&build_projective_space(2, 2).unwrap()).unwrap();
    let good = temp_file("plane-good", &fano.to_json());
    let r = qproj(&["plane", "check", good.to_str().unwrap()]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.stdout);
    assert!(r.stdout.starts_with("plane checks (order 2):"));

    let mut broken = fano.clone();
    broken.lines[0].pop();
    let bad = temp_file("plane-bad", &broken.to_json());
    let r = qproj(&["plane", "check", bad.to_str().unwrap()]);
    assert_eq!(r.exit_code, EXIT_VERIFICATION);
    assert!(r.stdout.contains("witness:"));
    std::fs::remove_file(good).unwrap();
    std::fs::remove_file(bad).unwrap();
}

#[test]
fn bruck_ryser_verdicts() {
    let six = qproj(&["plane", "bruck-ryser", "6"]);
    assert_eq!(six.exit_code, EXIT_OK);
    assert_eq!(six.stdout, "FAILS (6 ≡ 2 mod 4, not a sum of two squares)\n");
    let ten = qproj(&["plane", "bruck-ryser", "10"]);
    assert!(ten.stdout.starts_with("PASSES (10 ≡ 2 mod 4, 10 = 1^2 + 3^2"));
    assert!(ten.stdout.contains("note: no projective plane of order 10 exists"));
    assert!(qproj(&["plane", "bruck-ryser", "12"]).stdout.starts_with("NOT APPLICABLE"));
    let doc = json_out(&qproj(&["plane", "bruck-ryser", "10", "--json"]));
    assert_eq!(doc["result"]["verdict"], "Passes");
    assert!(doc["result"]["note"].is_string());
}

#[test]
fn paths_and_groups() {
    assert_eq!(qproj(&["paths", "gf", "2", "2"]).stdout, "1 1 2 1 1\nPASS: equals [4, 2]_q\n");
    for (n, q, order) in [("2", "2", "6"), ("2", "3", "12"), ("3", "2", "168")] {
        let r = qproj(&["group", "order", "PSL", n, q, "--brute-force"]);
        assert_eq!(r.exit_code, EXIT_OK);
        assert!(r.stdout.starts_with(&format!("PSL_{n}({q}) = {order} (formula)")));
        assert!(r.stdout.contains(&format!("brute force: {order} (agrees)")));
    }
    assert!(qproj(&["group", "order", "gl", "4", "2"]).stdout.starts_with("GL_4(2) = 20160"));
}

#[test]
fn json_envelope_is_uniform() {
    for args in [
        &["qbinom", "4", "2", "--json"][..],
        &["--json", "expand", "3"],
        &["subspaces", "2", "4", "2", "--json"],
        &["paths", "gf", "3", "2", "--json"],
        &["group", "order", "sl", "2", "5", "--json"],
        &["subspaces", "6", "1", "1", "--json"],
        &["paths", "gf", "13", "13", "--json"],
        &["nonsense", "--json"],
    ] {
        let r = qproj(args);
        let doc = json_out(&r);
        for key in ["command", "status", "exit_code", "result", "error"] {
            assert!(doc.get(key).is_some(), "{args:?} lacks {key}");
        }
        assert_eq!(doc["exit_code"], u64::from(r.exit_code));
        let reserialized: Value = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(reserialized, doc);
    }
    let doc = json_out(&qproj(&["qbinom", "4", "2", "--json"]));
    assert_eq!(doc["result"]["coefficients"], serde_json::json!(["1", "1", "2", "1", "1"]));
    assert_eq!(doc["status"], "ok");
}

#[test]
fn deterministic_output() {
    let a = qproj(&["geometry", "build", "--projective", "3", "2"]);
    let b = qproj(&["geometry", "build", "--projective", "3", "2"]);
    assert_eq!(a, b);
}

#[test]
fn binary_round_trip_through_a_pipe() {
    let exe = env!("CARGO_BIN_EXE_qproj");
    let built = Command::new(exe).args(["geometry", "build", "--projective", "2", "3"]).output().unwrap();
    assert!(built.status.success());
    let mut check = Command::new(exe)
        .args(["geometry", "check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    check.stdin.take().unwrap().write_all(&built.stdout).unwrap();
    let out = check.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let mut mutant = Command::new(exe)
        .args(["geometry", "check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    mutant.stdin.take().unwrap().write_all(fano_without_a_line().as_bytes()).unwrap();
    assert_eq!(mutant.wait_with_output().unwrap().status.code(), Some(1));

    let usage = Command::new(exe).args(["qbinom"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let budget = Command::new(exe).args(["paths", "gf", "20", "20"]).output().unwrap();
    assert_eq!(budget.status.code(), Some(3));
}
