use std::process::{Command, Output};

use dp1_lattice::report::{Cell, CellValue, Report};
use serde_json::Value;

fn dp1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dp1"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = dp1(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classes_lists_eleven_records() {
    let v = json(&["classes", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0]["lambda"]["value"], "E8");
    assert_eq!(rows[0]["r"]["value"], 8);
    let md = stdout(&dp1(&["classes"]));
    assert_eq!(md.lines().filter(|l| l.starts_with("| M")).count(), 11);
}

#[test]
fn pairs_lists_seven() {
    let v = json(&["classes", "--pairs", "--format", "json"]);
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn root_table_by_number_and_name() {
    let by_number = json(&["tables", "2", "--format", "json"]);
    let by_name = json(&["tables", "roots", "--format", "json"]);
    assert_eq!(by_number, by_name);
    let rows = by_number.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let last = &rows[3];
    assert_eq!(
        (
            last["level"]["value"].as_str(),
            last["number"]["value"].as_i64(),
            last["qhat"]["value"].as_i64()
        ),
        (Some("3"), Some(16), Some(0))
    );
    let cell: Cell = serde_json::from_value(last["number"].clone()).unwrap();
    assert_eq!(cell.value, CellValue::Int(16));
}

#[test]
fn summary_grid_column_m() {
    let v = json(&["tables", "6", "--format", "json"]);
    let col: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["m"]["value"].as_i64().unwrap())
        .collect();
    assert_eq!(col, [-128, 0, 112, 0, 46, 30]);
    assert_eq!(v[4]["m"]["provenance"], "cited-formula");
}

#[test]
fn delta_table_has_five_rows() {
    let v = json(&["tables", "7", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1]["m_connected"]["value"], 28);
    assert_eq!(rows[4]["formula"]["value"], "-2(r-r')");
}

#[test]
fn verify_all_passes_and_round_trips() {
    let o = dp1(&["verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.failed, 0);
    let totals: Vec<_> = report
        .records
        .iter()
        .filter(|r| r.check.starts_with("full_count/"))
        .collect();
    assert_eq!(totals.len(), 11);
    assert!(totals.iter().all(|r| r.actual == Some(30)));
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn verify_is_deterministic() {
    let a = dp1(&["verify", "--class", "M2-connected", "--format", "csv"]);
    let b = dp1(&["verify", "--class", "M2-connected", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_maximal_pair() {
    let v = json(&["verify", "--class", "M-connected", "--format", "json"]);
    let rec = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "paired_count/M-connected")
        .unwrap();
    assert_eq!(rec["actual"], 96);
    assert_eq!(rec["pass"], true);
}

#[test]
fn corrupted_embedding_fails_with_named_record() {
    let o = dp1(&[
        "verify",
        "--class",
        "M4",
        "--corrupt-embedding",
        "M4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text
        .lines()
        .any(|l| l.starts_with("embedding_valid/M4,") && l.ends_with(",FAIL")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("full_count/M4") || l.starts_with("paired_count/M4")));
}

#[test]
fn usage_errors_exit_two_without_output() {
    for args in [
        &["verify", "--class", "E9"][..],
        &["enumerate", "--stratum", "3"],
        &["tables", "8"],
        &["classes", "--format", "xml"],
    ] {
        let o = dp1(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn enumerate_writes_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b4.csv");
    let o = dp1(&[
        "enumerate",
        "--class",
        "M4",
        "--stratum",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 25);
    assert!(text.starts_with("class,stratum,alpha,v,qhat"));
}

#[test]
fn wallcross_rows_match() {
    let v = json(&["wallcross", "--class", "M2I-a", "--format", "json"]);
    let row = &v[0];
    assert_eq!(row["vanishing_roots"]["value"], 16);
    assert_eq!(row["splitting_checks"]["value"], row["splitting_matches"]["value"]);
    assert_eq!(row["weighted_balance"]["value"], 12);
}

#[test]
fn node_limit_variable_turns_into_failed_records() {
    let o = Command::new(env!("CARGO_BIN_EXE_dp1"))
        .args(["verify", "--class", "M2I-a", "--format", "csv"])
        .env(dp1_lattice::lattice::NODE_LIMIT_VAR, "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains(",error,FAIL")));
}
