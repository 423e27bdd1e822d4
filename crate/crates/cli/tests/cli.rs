use std::process::{Command, Output};

use serde_json::Value;

fn nilgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn validate_bundled_algebra() {
    let out = nilgeom(&["validate", "heisenberg3.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn fbasis_weights_of_seven_dim_example() {
    let out = nilgeom(&["fbasis", "favre7.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["weights"],
        serde_json::json!([1, 1, 2, 3, 4, 5, 6])
    );
    let out = nilgeom(&["lcs", "heisenberg3"]);
    assert_eq!(json(&out)["dims"], serde_json::json!([3, 1]));
}

#[test]
fn decay_first_row_is_a_quarter() {
    let out = nilgeom(&[
        "decay",
        "heisenberg3.json",
        "--i",
        "3",
        "--r",
        "1",
        "--nmax",
        "300",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,r,norm,radius,normalized_decay"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    assert_eq!(row[2].parse::<f64>().unwrap(), 0.25, "{row:?}");
    assert_eq!(row[3], "0");
    assert_eq!(text.lines().count(), 301);
}

#[test]
fn coordinates_and_products() {
    let out = nilgeom(&["coords", "heisenberg3", "--t", "2,3,1"]);
    assert_eq!(json(&out)["second"], serde_json::json!(["2", "3", "-2"]));
    let out = nilgeom(&["bch", "heisenberg3", "--x", "1,0,0", "--y", "0,1,0"]);
    assert_eq!(json(&out)["z"], serde_json::json!(["1", "1", "1/2"]));
    let out = nilgeom(&[
        "pbw-mul",
        "heisenberg3",
        "--x",
        r#"{"terms":[{"alpha":[0,1,0],"c":"1"}]}"#,
        "--y",
        r#"{"terms":[{"alpha":[1,0,0],"c":"1"}]}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn factorize_central_element() {
    let out = nilgeom(&["factorize", "heisenberg3", "--t", "0,0,4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["certificate"]["length"], 8);
    assert_eq!(v["certificate"]["residual_radius"], "0");
}

#[test]
fn checks_and_norms() {
    assert_eq!(
        nilgeom(&["weights-check", "--bound", "30"]).status.code(),
        Some(0)
    );
    let out = nilgeom(&["entire", "heisenberg3", "--r", "1,10"]);
    assert_eq!(out.status.code(), Some(0));
    let out = nilgeom(&["normtrick", "heisenberg3"]);
    assert_eq!(json(&out)["corcbh"], "1");
    let out = nilgeom(&["ballbound", "favre7", "--words", "20", "--max-len", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let out = nilgeom(&["sigma", "heisenberg3", "--t", "3,-4,9"]);
    assert!(json(&out)["sigma"]["mid"]
        .as_str()
        .unwrap()
        .starts_with('4'));
    let out = nilgeom(&[
        "exptype",
        "heisenberg3",
        "--f",
        r#"{"terms":[{"alpha":[0,0,1],"c":"1"}]}"#,
        "--r",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = [
        "subpoly",
        "heisenberg3",
        "--train",
        "200",
        "--test",
        "200",
        "--seed",
        "9",
    ];
    let a = nilgeom(&args);
    let b = nilgeom(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 9);
}

#[test]
fn input_errors_exit_two_with_json() {
    let out = nilgeom(&["validate", "no_such_algebra.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");
    let out = nilgeom(&["decay", "heisenberg3", "--i", "9", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nilgeom(&[
        "normtrick",
        "favre7",
        "--target",
        "1/1000",
        "--max-steps",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_directory_receives_the_report() {
    let dir = std::env::temp_dir().join(format!("nilgeom-cli-{}", std::process::id()));
    let out = nilgeom(&[
        "lcs",
        "favre7",
        "--format",
        "csv",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.join("lcs.csv")).unwrap();
    assert!(text.starts_with("j,dim\n1,7\n"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn report_runs_selected_criteria() {
    let out = nilgeom(&["report", "--only", "1,7,12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);
    assert_eq!(nilgeom(&["report", "--only", "13"]).status.code(), Some(2));
}
