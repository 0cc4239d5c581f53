use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.ends_with(".json") || a.ends_with(".csv") { fixture(a) } else { a.to_string() })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_persheaf")).args(&args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn cohomology_of_triangle() {
    let o = run(&["cohomology", "triangle.json", "constant1.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H^0: 1\nH^1: 1\n");
}

#[test]
fn field_flag_overrides_file() {
    let o = run(&["--field", "3", "cohomology", "triangle.json", "constant1.json", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"], 3);
    assert_eq!(v["dims"], serde_json::json!({"0": 1, "1": 1}));
}

#[test]
fn staircase_both_engines() {
    let o = run(&["persist-a", "staircase_diagram.json", "--engine", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H^0: [1, inf)\nH^0: [2, inf)\nH^0: [4, inf)\n");
    let o = run(&["persist-a", "staircase_diagram.json", "--format", "json", "--closed-end"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bars"], serde_json::json!([[1, 4], [2, 4], [4, 4]]));
}

#[test]
fn square_type_t_cycle() {
    let o = run(&["persist-t", "square_filtration.json", "constant1.json", "--k", "1", "--engine", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H^1: [3, inf)\n");
}

#[test]
fn svg_has_one_row_per_bar() {
    let o = run(&["persist-t", "square_filtration.json", "constant1.json", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("<svg"));
    assert_eq!(s.matches("stroke-width=\"4\"").count(), 4);
    assert_eq!(s.matches("<polygon").count(), 1);
}

#[test]
fn labeled_json_and_csv() {
    let o = run(&["labeled", "seven_step_labeled.json", "--hom-n", "1", "--k", "1"]);
    assert_eq!(stdout(&o), "H^1: [3, 5]\nH^1: [5, 5]\n");
    let o = run(&["labeled", "labeled_square.csv", "--thresholds", "0,1,1.5", "--hom-n", "1", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H^1: [1, 1]\n");
}

#[test]
fn unicolored_csv_matches_json() {
    let a = run(&["unicolored", "two_color_points.csv", "--thresholds", "0,1,1.5"]);
    let b = run(&["unicolored", "two_color_merge.json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn invalid_sheaf_exits_2() {
    let o = run(&["validate", "broken_diamond.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["cohomology", "missing.json", "constant1.json"]).status.code(), Some(1));
    assert_eq!(run(&["--field", "4", "validate", "triangle.json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["cohomology", "triangle.json", "constant1.json", "--format", "svg"]).status.code(), Some(1));
    assert_eq!(run(&["labeled", "labeled_square.csv"]).status.code(), Some(1));
}
