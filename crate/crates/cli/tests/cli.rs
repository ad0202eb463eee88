use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simulmeas")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write_optimal(dir: &Path, theta: &str) -> String {
    let path = dir.join("optimal.json");
    let out = run(&["optimal", "--theta", theta, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    path.to_str().unwrap().to_owned()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn optimal_reports_two_thirds_at_thirty_degrees() {
    let out = run(&["optimal", "--theta", "30", "--degrees"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 4);
    assert!((f(&doc["accuracies"]["x_a"]) - 2.0 / 3.0).abs() < 1e-12);
    assert!((f(&doc["accuracies"]["x_b"]) - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn optimal_round_trips_through_validate_and_accuracy() {
    let dir = TempDir::new().unwrap();
    let povm = write_optimal(dir.path(), "0.5236");
    let optimal: Value = serde_json::from_str(&fs::read_to_string(&povm).unwrap()).unwrap();

    let out = run(&["validate", "--povm", &povm]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["conforming"], Value::Bool(true));

    let out = run(&["accuracy", "--povm", &povm]);
    assert!(out.status.success());
    let doc = json(&out);
    assert!((f(&doc["a"]["accuracy"]) - f(&optimal["accuracies"]["x_a"])).abs() < 1e-12);
    assert!((f(&doc["b"]["accuracy"]) - f(&optimal["accuracies"]["x_b"])).abs() < 1e-12);

    let out = run(&["tradeoff", "--povm", &povm]);
    assert!(out.status.success());
    assert_eq!(json(&out)["tradeoff"]["verdict"], "satisfied");
}

#[test]
fn separate_observables_file_is_used() {
    let dir = TempDir::new().unwrap();
    let povm = dir.path().join("povm.json");
    let obs = dir.path().join("obs.json");
    fs::write(
        &povm,
        r#"{"elements": [
            {"i": "+", "j": "+", "r": 0.25, "x": [0.1, 0.0, 0.1]},
            {"i": "+", "j": "-", "r": 0.25, "x": [-0.1, 0.0, 0.1]},
            {"i": "-", "j": "+", "r": 0.25, "x": [0.1, 0.0, -0.1]},
            {"i": "-", "j": "-", "r": 0.25, "x": [-0.1, 0.0, -0.1]}]}"#,
    )
    .unwrap();
    fs::write(&obs, r#"{"n_a": [0, 0, 1], "n_b": [1, 0, 0]}"#).unwrap();
    let out = run(&["accuracy", "--povm", povm.to_str().unwrap(), "--obs", obs.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!((f(&json(&out)["a"]["accuracy"]) - 0.16).abs() < 1e-12);

    // Axes swapped: the marginals no longer point along their observables.
    fs::write(&obs, r#"{"n_a": [0, 0, 1], "n_b": [0, 1, 0]}"#).unwrap();
    let out = run(&["validate", "--povm", povm.to_str().unwrap(), "--obs", obs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not nonideal"), "{}", stderr(&out));
}

#[test]
fn r_sum_violation_exits_one_with_named_constraint() {
    let dir = TempDir::new().unwrap();
    let povm = dir.path().join("bad.json");
    fs::write(
        &povm,
        r#"{"elements": [
            {"i": "+", "j": "+", "r": 0.3, "x": [0, 0, 0]},
            {"i": "+", "j": "-", "r": 0.3, "x": [0, 0, 0]},
            {"i": "-", "j": "+", "r": 0.25, "x": [0, 0, 0]},
            {"i": "-", "j": "-", "r": 0.25, "x": [0, 0, 0]}],
            "n_a": [0, 0, 1], "n_b": [1, 0, 0]}"#,
    )
    .unwrap();
    let out = run(&["validate", "--povm", povm.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("sum of r coefficients"), "{}", stderr(&out));
}

#[test]
fn truncated_json_exits_two() {
    let dir = TempDir::new().unwrap();
    let good = write_optimal(dir.path(), "1.0");
    let text = fs::read_to_string(&good).unwrap();
    let bad = dir.path().join("truncated.json");
    fs::write(&bad, &text[..text.len() / 2]).unwrap();
    let out = run(&["validate", "--povm", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed input"));
}

#[test]
fn missing_file_and_bad_flags_exit_two() {
    assert_eq!(run(&["validate", "--povm", "/nonexistent/povm.json"]).status.code(), Some(2));
    assert_eq!(run(&["optimal", "--theta", "1.0", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--theta", "1.0"]).status.code(), Some(2), "seed is required");
}

#[test]
fn collinear_angle_exits_one() {
    let out = run(&["optimal", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("collinear"));
}

#[test]
fn estimate_is_deterministic_under_seed() {
    let dir = TempDir::new().unwrap();
    let povm = write_optimal(dir.path(), "1.5707963267948966");
    let args = ["estimate", "--povm", &povm, "--state", "0,0,0.4", "--n", "10000", "--seed", "42"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(f(&doc["n"]), 10000.0);
    assert!((f(&doc["p_star_a"]) - 0.7).abs() < 0.05);

    let other = run(&["estimate", "--povm", &povm, "--state", "0,0,0.4", "--n", "10000", "--seed", "43"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn experiment_writes_per_trial_csv() {
    let dir = TempDir::new().unwrap();
    let povm = write_optimal(dir.path(), "1.5707963267948966");
    let csv_path = dir.path().join("trials.csv");
    let args = [
        "estimate", "--povm", &povm, "--state", "0,0,0.4", "--n", "2000", "--seed", "42", "--trials", "50",
        "--trials-csv", csv_path.to_str().unwrap(),
    ];
    let out = run(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = json(&out);
    assert!(f(&doc["a"]["ratio"]) > 0.0);
    let csv = fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "trial,p_star_a,p_star_b");
    assert_eq!(lines.len(), 51);

    let mut args_csv = args.to_vec();
    args_csv.truncate(args.len() - 2);
    args_csv.extend(["--format", "csv"]);
    let out = run(&args_csv);
    assert_eq!(stdout(&out), csv);
}

#[test]
fn simulate_csv_counts_sum_to_n() {
    let dir = TempDir::new().unwrap();
    let povm = write_optimal(dir.path(), "0.8");
    let out = run(&["simulate", "--povm", &povm, "--state", "0.1,-0.2,0.3", "--n", "777", "--seed", "5", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let total: u64 = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 777);
}

#[test]
fn sweep_at_right_angle_follows_the_line() {
    let out = run(&["sweep", "--theta", "1.5708", "--grid", "11", "--seed", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,x_a_target,x_b_achieved,x_b_boundary,gap"));
    let mut rows = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[1] + cols[2] - 1.0).abs() < 1e-3, "{line}");
        rows += 1;
    }
    assert_eq!(rows, 11);
}

#[test]
fn sequential_verdicts() {
    let out = run(&["sequential", "--eta", "0.6", "--theta", "1.5707963267948966"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["status"], "applicable");
    assert!((f(&doc["error_a"]) * f(&doc["disturbance_b"]) - 1.0).abs() < 1e-10);

    let out = run(&["sequential", "--eta", "0.6", "--theta", "60", "--degrees"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["status"], "not_applicable");
}

#[test]
fn split_stays_in_the_separable_domain() {
    let out = run(&["split", "--xi", "0.3", "--theta", "0.5"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["effective_domain"], "P");
    assert!((f(&doc["effective"]["x_a"]) - 0.3).abs() < 1e-15);
}

#[test]
fn forbidden_accuracies_exit_one() {
    let out = run(&["tradeoff", "--x-a", "0.9", "--x-b", "0.9", "--theta", "1.0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["domain"], "Forbidden");
    let out = run(&["tradeoff", "--x-a", "0.5", "--x-b", "0.5", "--theta", "1.0"]);
    assert!(out.status.success());
}
