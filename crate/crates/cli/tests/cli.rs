use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superschur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON value per line"))
        .collect()
}

#[test]
fn dim_reports_agreement() {
    let o = run(&["dim", "--m", "1", "--n", "1", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["dimension_count"], "8");
    assert_eq!(v["basis_size"], "8");
    assert_eq!(v["commutant_dimension"], "8");

    let o = run(&["dim", "--m", "2", "--n", "1", "--d", "2"]);
    assert_eq!(json_lines(&o)[0]["dimension_count"], "41");

    let o = run(&["dim", "--m", "1", "--n", "1", "--d", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["dimension_count"], "1");
}

#[test]
fn verify_suites_pass() {
    let o = run(&["verify", "--mode", "classical", "--m", "1", "--n", "1", "--d", "2", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.last().unwrap()["passed"], true);
    assert!(lines.iter().filter(|l| l.get("citation").is_some()).count() > 10);

    let o = run(&["verify", "--mode", "quantum", "--m", "2", "--n", "1", "--d", "2", "--suite", "relations"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn omega_prints_diagonal() {
    let o = run(&["verify", "--mode", "quantum", "--m", "1", "--n", "1", "--d", "3", "--suite", "omega"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    let diag = &lines[0]["omega_diagonal"];
    assert_eq!(diag.as_array().unwrap().len(), 8);
    assert_eq!(diag, &lines[0]["sigma_diagonal"]);
}

#[test]
fn basis_lists_records() {
    let o = run(&["basis", "--m", "1", "--n", "1", "--d", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert!(v[0].get("A").is_some() && v[0].get("lambda").is_some() && v[0].get("C").is_some());
}

#[test]
fn coords_of_fe() {
    let o = run(&["coords", "--m", "1", "--n", "1", "--d", "1", "--input", r#"[["f",1],["e",1]]"#]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["coefficient"], "1");
    assert_eq!(arr[0]["element"]["lambda"], serde_json::json!([0, 1]));
}

#[test]
fn quantum_matrix_of_k1() {
    let o = run(&["matrix", "--mode", "quantum", "--m", "1", "--n", "1", "--d", "1", "--gen", "K1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q,0\n0,1\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["dim", "--m", "3", "--n", "3", "--d", "5"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "--m", "0", "--n", "1", "--d", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["coords", "--m", "1", "--n", "1", "--d", "1", "--input", "not json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["matrix", "--m", "1", "--n", "1", "--d", "1", "--gen", "e5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--m", "1", "--n", "1", "--d", "1", "--suite", "omega"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--mode", "quantum", "--m", "1", "--n", "1", "--d", "1", "--suite", "basis", "--q0", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--mode", "quantum", "--m", "1", "--n", "1", "--d", "2", "--suite", "all"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}
