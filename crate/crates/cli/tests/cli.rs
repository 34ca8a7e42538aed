use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cm-cells"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn block_sizes(v: &Value) -> Vec<usize> {
    let mut sizes: Vec<usize> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["members"].as_array().unwrap().len())
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

#[test]
fn blocks_equal_parameters() {
    let v = json_of(&[
        "blocks", "--ell", "2", "--n", "2", "--c-s", "1", "--c-t", "1",
    ]);
    assert_eq!(block_sizes(&v), vec![3, 1, 1]);
    assert_eq!(v["blocks"][0]["heart"], json!([2, 1]));
    assert_eq!(
        v["blocks"][0]["members"],
        json!([[[2], []], [[1], [1]], [[], [1, 1]]])
    );
    assert_eq!(v["typeJ"], json!([0]));
}

#[test]
fn blocks_generic_points_are_trivial() {
    let v = json_of(&[
        "blocks", "--ell", "2", "--n", "3", "--c-s", "2", "--c-t", "3",
    ]);
    assert!(block_sizes(&v).iter().all(|&s| s == 1));
    assert_eq!(block_sizes(&v).len(), 10);
    let v = json_of(&["blocks", "--ell", "3", "--n", "2", "--theta", "1/3,1/3,1/3"]);
    assert_eq!(block_sizes(&v), vec![1; 9]);
    assert_eq!(v["theta"], json!(["1/3", "1/3", "1/3"]));
}

#[test]
fn cells_small_cases() {
    let v = json_of(&["cells", "--n", "2", "--r", "0"]);
    assert_eq!(
        v["cells"],
        json!([[[4]], [[3, 1], [2, 2], [2, 1, 1]], [[1, 1, 1, 1]]])
    );
    assert_eq!(
        v["edges"][0],
        json!({"from": [2, 2], "to": [3, 1], "removed": {"p": 2, "q": 2}, "added": {"p": 1, "q": 3}})
    );
    let v = json_of(&["cells", "--n", "0", "--r", "3"]);
    assert_eq!(v["cells"], json!([[[3, 2, 1]]]));
    let v = json_of(&["cells", "--n", "1", "--r", "0"]);
    assert_eq!(v["cells"], json!([[[2]], [[1, 1]]]));
}

#[test]
fn verify_default_bounds_pass() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["instances"].as_array().unwrap().len(), 16);
}

#[test]
fn verify_detects_injected_fault() {
    let out = run(&[
        "verify",
        "--inject-fault",
        "residue-shift",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("counterexample"));
    assert!(text.trim_end().ends_with("FAIL"));
}

#[test]
fn verify_with_no_instances() {
    let v = json_of(&["verify", "--max-n", "0"]);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["note"], json!("0 instances"));
}

#[test]
fn tau_and_reduce() {
    let v = json_of(&["tau", "--ell", "2", "--charge", "0,0", "--mp", "[[1],[]]"]);
    assert_eq!(v["partition"], json!([1, 1]));
    let v = json_of(&[
        "tau",
        "--ell",
        "2",
        "--charge",
        "0,0",
        "--partition",
        "[3,1]",
    ]);
    assert_eq!(v["multipartition"], json!([[2], []]));

    let v = json_of(&["reduce", "--ell", "2", "--theta", "-1,2"]);
    assert_eq!(v["typeJ"], json!([1]));
    assert_eq!(v["word"], json!([0]));
    assert_eq!(v["charge"], json!([1, -1]));
    let v = json_of(&["reduce", "--ell", "5", "--theta", "1/5,1/5,1/5,1/5,1/5"]);
    assert_eq!(v["word"], json!([]));
    assert_eq!(v["typeJ"], json!([]));
    assert_eq!(v["permutation"], json!([0, 1, 2, 3, 4]));
}

#[test]
fn exit_codes() {
    // core mismatch
    assert_eq!(
        run(&[
            "tau",
            "--ell",
            "2",
            "--charge",
            "0,0",
            "--partition",
            "[2,1]"
        ])
        .status
        .code(),
        Some(2)
    );
    // floats are not rationals
    assert_eq!(
        run(&["reduce", "--ell", "2", "--theta", "0.5,0.5"])
            .status
            .code(),
        Some(2)
    );
    // wrong number of coordinates
    assert_eq!(
        run(&["reduce", "--ell", "3", "--theta", "1,2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["blocks", "--ell", "2", "--n", "2", "--c-s", "0", "--c-t", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["cells", "--n", "40", "--r", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&[
            "blocks",
            "--ell",
            "2",
            "--n",
            "3",
            "--max-size",
            "4",
            "--theta",
            "1,1"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["cells", "--n", "4", "--r", "1"];
    let first = run(&args).stdout;
    let single = Command::new(env!("CARGO_BIN_EXE_cm-cells"))
        .args(args)
        .env("CM_CELLS_MAX_PARALLEL", "1")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(first, single);
    assert_eq!(first, run(&args).stdout);
}

#[test]
fn bad_parallelism_setting() {
    let out = Command::new(env!("CARGO_BIN_EXE_cm-cells"))
        .args(["cells", "--n", "1", "--r", "0"])
        .env("CM_CELLS_MAX_PARALLEL", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
