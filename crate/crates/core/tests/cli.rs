//! End-to-end runs of the `takagi` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn takagi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_takagi"))
        .args(args)
        .env_remove("TAKAGI_DEFAULT_TERMS")
        .output()
        .expect("binary runs")
}

fn payload(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("one JSON record");
    v["payload"].clone()
}

#[test]
fn eval_exact_and_certified() {
    let p = payload(&takagi(&["eval", "1/3", "--exact"]));
    assert_eq!(p["value"], "2/3");
    assert_eq!(p["decimal"], "0.66666666666666666667");

    let out = takagi(&["eval", "1/3", "--terms", "10"]);
    let p = payload(&out);
    assert_eq!(p["terms"], 10);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact"], false);
    assert_eq!(v["command"], "eval");
}

#[test]
fn default_terms_from_environment() {
    let p = payload(&takagi(&["eval", "1/5"]));
    assert_eq!(p["terms"], 64);
    let out = Command::new(env!("CARGO_BIN_EXE_takagi"))
        .args(["eval", "1/5"])
        .env("TAKAGI_DEFAULT_TERMS", "12")
        .output()
        .unwrap();
    assert_eq!(payload(&out)["terms"], 12);
    let out = Command::new(env!("CARGO_BIN_EXE_takagi"))
        .args(["eval", "1/5"])
        .env("TAKAGI_DEFAULT_TERMS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_points() {
    let p = payload(&takagi(&["classify", "1/3"]));
    assert_eq!(p["case"], "TailAlternating");
    assert_eq!(p["superdiff"], "[0,1]");
    assert_eq!(p["subdiff"], "empty");
    assert_eq!(p["local_max"], true);

    let p = payload(&takagi(&["classify", "-2/5"]));
    assert_eq!(p["superdiff"], "{0}");

    let p = payload(&takagi(&["classify", "0.(001)"]));
    assert_eq!(p["x"], "1/7");
    assert_eq!(p["case"], "Irregular");

    let p = payload(&takagi(&["classify", "3/8"]));
    assert_eq!(p["case"], "Dyadic");
    assert_eq!(p["subdiff"], "R");
}

#[test]
fn dini_tables() {
    let p = payload(&takagi(&["dini", "1/5", "--depth", "12", "--width", "4"]));
    let table = p["mirror_table"].as_array().unwrap();
    assert_eq!(table.len(), 10);
    for row in table {
        assert_eq!(
            row["quotient"].as_str().unwrap(),
            row["predicted"].to_string()
        );
    }

    let p = payload(&takagi(&["dini", "1/2", "--depth", "20"]));
    assert_eq!(p["divergent_up"], true);
    assert_eq!(p["dyadic_level"], 2);
    assert_eq!(p["dyadic_table"].as_array().unwrap().len(), 18);
}

#[test]
fn maxset_memberships() {
    let p = payload(&takagi(&["maxset", "2/5"]));
    assert_eq!(p["in_M"], true);
    assert_eq!(p["max_value"], true);
    assert_eq!(p["in_A"], Value::Null);
    assert_eq!(p["in_script_A"]["m"], 1);

    let p = payload(&takagi(&["maxset", "1/9"]));
    assert_eq!(p["in_M"], false);
    assert_eq!(p["in_script_A"], Value::Null);
}

#[test]
fn scan_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let p = payload(&takagi(&[
        "scan",
        "--from",
        "0",
        "--to",
        "1",
        "--step",
        "1/64",
        "--out",
        path.to_str().unwrap(),
    ]));
    assert_eq!(p["rows"], 65);
    assert_eq!(p["max_t_exact"], "21/32");

    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["x", "t_exact", "t_decimal", "case", "superdiff"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 65);
    for row in &rows {
        assert_eq!(&row[3], "Dyadic");
        assert_eq!(&row[4], "empty");
        let (n, d) = row[1].split_once('/').unwrap_or((&row[1], "1"));
        let (n, d): (i64, i64) = (n.parse().unwrap(), d.parse().unwrap());
        assert!(3 * n <= 2 * d, "{}", &row[1]);
    }
}

#[test]
fn scan_jsonl_thirds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("thirds.jsonl");
    let out = takagi(&[
        "scan",
        "--from",
        "0",
        "--to",
        "1",
        "--step",
        "1/3",
        "--format",
        "jsonl",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(payload(&out)["rows"], 4);
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let xs: Vec<&str> = rows.iter().map(|r| r["x"].as_str().unwrap()).collect();
    let ts: Vec<&str> = rows
        .iter()
        .map(|r| r["t_exact"].as_str().unwrap())
        .collect();
    assert_eq!(xs, ["0", "1/3", "2/3", "1"]);
    assert_eq!(ts, ["0", "2/3", "2/3", "0"]);
    assert_eq!(rows[1]["witness_m"], 1);
    assert_eq!(rows[1]["c_x"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(takagi(&["eval", "1/0"]).status.code(), Some(2));
    assert_eq!(takagi(&["classify", "abc"]).status.code(), Some(2));
    assert_eq!(takagi(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        takagi(&["eval", "1/3", "--terms", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(
        takagi(&["dini", "1/3", "--depth", "2"]).status.code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let out = takagi(&[
        "scan",
        "--from",
        "0",
        "--to",
        "1",
        "--step",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("step"));
    let err = takagi(&["classify", "1/x"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("`x`"));
    assert_eq!(takagi(&["--help"]).status.code(), Some(0));
}
