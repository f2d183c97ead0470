//! End-to-end tests of the command-line interface: exit codes and the
//! stability of the JSON contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pretzel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn alexander_json_is_deterministic_and_correct() {
    let a = run(&["alexander", "--s", "3"]);
    let b = run(&["alexander", "--s", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical JSON across runs");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["degree"], 10);
    assert_eq!(v["unit_circle_roots"], 8);
    assert_eq!(v["reciprocal"], true);
    assert_eq!(v["is_salem"], true);
    assert_eq!(v["hyperbolicity_condition"], true);
}

#[test]
fn alexander_torus_case() {
    let out = run(&["alexander", "--pretzel=-2,3,5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["is_salem"], false);
    assert_eq!(v["hyperbolicity_condition"], false);
    assert_eq!(v["cyclotomic_factors"][0][0], 15);
}

#[test]
fn alexander_rejects_bad_input() {
    assert_eq!(run(&["alexander", "--s", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["alexander", "--pretzel", "3,5,7"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["alexander"]).status.code(), Some(2));
}

#[test]
fn slopes_table_and_validation() {
    let out = run(&["slopes", "--s", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["distinct_slopes"].as_array().unwrap().len(), 11);
    assert_eq!(v["table"]["rows"][0]["signs"], "+++");
    assert!(v["table"]["rows"][0]["type_ii"].is_null()); // not admissible
    assert_eq!(v["table"]["rows"][0]["type_iii"], 0);
    assert_eq!(run(&["slopes", "--s", "2"]).status.code(), Some(2));
}

#[test]
fn prove_exit_codes() {
    // above the slope bound: certified
    let ok = run(&["prove", "--s", "3", "--p", "9", "--q", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["result"], "BOT");

    // below the bound: the arithmetic side condition fails
    let below = run(&["prove", "--s", "3", "--p", "8", "--q", "1"]);
    assert_eq!(below.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&below)).unwrap();
    assert_eq!(v["result"], "failed");
    assert_eq!(v["rule"], "R-KPOW-SIGN");
    assert_eq!(v["step"], "z1");

    // invalid slope
    assert_eq!(
        run(&["prove", "--s", "3", "--p", "4", "--q", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn prove_script_parse_error_is_exit_3() {
    let dir = std::env::temp_dir();
    let path = dir.join("pretzel_cli_bad_script.ps");
    std::fs::write(&path, "context s=3 p=9 q=1\nstep x = frobnicate a\n").unwrap();
    let out = run(&["prove", "--script", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let good = dir.join("pretzel_cli_good_script.ps");
    std::fs::write(&good, "context s=3 p=9 q=1\naxiom axK\nstep a = pow axK 2\n").unwrap();
    let out = run(&["prove", "--script", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2)); // checks, but proves nothing
}

#[test]
fn group_reports_homology() {
    let out = run(&["group", "--s", "4", "--p", "23", "--q", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["meridian_homology_class"], 1);
    assert_eq!(v["longitude_homology_class"], 0);
    assert_eq!(v["surgery"]["h1_order"], 23);
}

#[test]
fn verify_all_quick_run() {
    let out = run(&[
        "verify-all",
        "--s-max",
        "4",
        "--s-max-prover",
        "3",
        "--fuzz-instances",
        "200",
        "--mutations",
        "20",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 8);
}
