//! End-to-end tests of the command-line front end: report schemas, the
//! exit-code contract, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_relbrace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

#[test]
fn basis_lists_the_whistle_component() {
    let out = run(&["basis", "--operad", "rbr", "--sig", "c;o"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["count"], 1);
    assert_eq!(v["elements"][0], "(s c1)");
}

#[test]
fn diff_reports_formal_sums() {
    let out = run(&["diff", "--sig", "cc;c", "--element", "(c1 c2)"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let terms = v["differential"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for t in terms {
        assert_eq!(t["coeff"], -1);
    }
}

#[test]
fn compose_reports_five_summands() {
    let out = run(&[
        "compose",
        "--sig-a", "oc;o", "--element-a", "(o1 c2)",
        "--slot", "1",
        "--sig-b", "cc;o", "--element-b", "(s c1 c2)",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"].as_array().unwrap().len(), 5);
}

#[test]
fn d2check_passes_and_respects_env_override() {
    let out = run(&["d2check", "--operad", "rbr", "--max-inputs", "2"]);
    assert!(out.status.success());
    let small = stdout_json(&out)["checked"].as_u64().unwrap();
    let out = bin()
        .args(["d2check", "--operad", "rbr", "--max-inputs", "2"])
        .env("RBR_MAX_INPUTS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let big = stdout_json(&out)["checked"].as_u64().unwrap();
    assert!(big > small, "environment override widens the bound");
}

#[test]
fn phi_kills_the_ternary_corolla() {
    let out = run(&["phi", "--sig", "ccc;c", "--element", "(n c1 c2 c3)"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["image"].as_array().unwrap().len(), 0);
}

#[test]
fn homology_of_the_circle_component() {
    let out = run(&["homology", "--operad", "rbr", "--sig", "cc;c"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let entries = v["summary"].as_array().unwrap();
    let betti: Vec<(i64, u64)> = entries
        .iter()
        .map(|e| (e["degree"].as_i64().unwrap(), e["betti"].as_u64().unwrap()))
        .collect();
    assert!(betti.contains(&(0, 1)));
    assert!(betti.contains(&(1, 1)));
}

#[test]
fn compare_passes_on_small_signatures() {
    for sig in ["cc;c", "co;o", "oo;o"] {
        let out = run(&["compare", "--sig", sig]);
        assert!(out.status.success(), "compare failed over {sig}");
        let v = stdout_json(&out);
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn poset_reports_the_hexagon() {
    let out = run(&["poset", "--sig", "ccc;c", "--element", "(c1 c2 c3)"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["fvector"], serde_json::json!([6, 6, 1]));
}

#[test]
fn cells_report_contractibility() {
    let out = run(&[
        "cells", "--sig", "ccc;c", "--element", "(c1 c2 c3)", "--cell", "theta",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["total_rank"], 7);
    assert_eq!(v["contractible"], true);
}

#[test]
fn hochschild_dual_numbers_values() {
    let out = run(&["hochschild", "--input", &data("dual_numbers.json")]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let betti: Vec<u64> = v["summary"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["betti"].as_u64().unwrap())
        .collect();
    assert_eq!(betti, vec![2, 1, 1, 1, 1]);
}

#[test]
fn mc_check_accepts_bundled_actions() {
    for name in [
        "dual_numbers.json",
        "truncated_cubic.json",
        "upper_triangular.json",
        "dual_numbers_f101.json",
    ] {
        let out = run(&["mc-check", "--input", &data(name)]);
        assert!(out.status.success(), "{name} rejected");
    }
}

#[test]
fn braces_check_samples_the_action() {
    let out = run(&[
        "braces-check",
        "--input", &data("dual_numbers_f101.json"),
        "--samples", "10",
        "--seed", "5",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["passed"], true);
}

#[test]
fn koszul_check_passes() {
    let out = run(&["koszul-check"]);
    assert!(out.status.success());
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["basis", "--sig"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["basis", "--sig", "zz;c"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["hochschild", "--input", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_failures_exit_with_one_and_name_witnesses() {
    let dir = std::env::temp_dir().join("relbrace-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    // Non-associative multiplication: rejected with a witness triple.
    let bad = dir.join("bad_mult.json");
    std::fs::write(
        &bad,
        serde_json::json!({
            "field": "Q",
            "dim": 2,
            "basis": ["1", "x"],
            "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
            "module": { "dim": 1, "rho": [[[1]], [[0]]], "f": [[0], [0]] }
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["mc-check", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
    // A broken translation law names the condition.
    let bad_f = dir.join("bad_f.json");
    std::fs::write(
        &bad_f,
        serde_json::json!({
            "field": "Q",
            "dim": 2,
            "basis": ["1", "x"],
            "mult": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
            "module": {
                "dim": 2,
                "rho": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]],
                "f": [[0, 0], [0, 1]]
            }
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["mc-check", "--input", bad_f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(v["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w.as_str().unwrap().contains("f(")));
}

#[test]
fn reports_are_byte_identical_for_identical_inputs() {
    let action = data("dual_numbers_f101.json");
    let args = [
        vec!["compare", "--sig", "cc;c"],
        vec!["braces-check", "--input", &action, "--samples", "5", "--seed", "9"],
        vec!["basis", "--operad", "rs", "--sig", "cco;o"],
    ];
    for a in &args {
        let first = run(a);
        let second = run(a);
        assert_eq!(first.stdout, second.stdout, "nondeterministic output for {a:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join("relbrace-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "compare", "--sig", "cc;c", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["schema"], "relbrace-report/1");
    assert_eq!(file["passed"], true);
}
