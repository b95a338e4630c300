use std::process::{Command, Output};

use serde_json::Value;

fn losc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_losc")).args(args).output().expect("losc runs")
}

fn json(args: &[&str]) -> Value {
    let out = losc(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

#[test]
fn table_rows_and_action_column() {
    let doc = json(&["table", "--grid-j", "0:0.45:10"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    for row in rows {
        assert!((f(&row["mean_H"]) - f(&row["J"])).abs() <= 1e-10);
    }
    assert_eq!(f(&rows[0]["mean_n_series"]), 0.0);
    assert_eq!(f(&rows[0]["mean_n2_series"]), 0.0);
    assert_eq!(doc["meta"]["command"], "table");
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let doc = json(&["table", "--grid-j", "0.05:0.4:4"]);
    let out = losc(&["table", "--grid-j", "0.05:0.4:4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    for (record, row) in reader.records().zip(doc["rows"].as_array().unwrap()) {
        let record = record.unwrap();
        for (name, field) in headers.iter().zip(record.iter()) {
            assert_eq!(field.parse::<f64>().unwrap(), f(&row[name]), "{name}");
        }
    }
}

#[test]
fn eval_vacuum_and_wavefunction() {
    let doc = json(&["eval", "--z", "0", "--truncation", "16"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(f(&rows[0]["re"]), 1.0);
    assert!(rows[1..].iter().all(|r| f(&r["modulus"]) == 0.0));

    let doc = json(&["eval", "--z", "0.2", "--grid-x", "-1:1:5"]);
    assert_eq!(doc["wavefunction"].as_array().unwrap().len(), 5);
    assert!(f(&doc["meta"]["max_abs_diff"]) <= 1e-9);

    let doc = json(&["eval", "--z", "-0.1,0.25", "--grid-x", "-0.5:0.5:3"]);
    assert!(f(&doc["meta"]["max_abs_diff"]) <= 1e-9);
}

#[test]
fn eval_gk_moduli_do_not_depend_on_angle() {
    let a = json(&["eval", "--J", "0.3", "--gamma", "1"]);
    let b = json(&["eval", "--J", "0.3", "--gamma", "0"]);
    for (x, y) in a["rows"].as_array().unwrap().iter().zip(b["rows"].as_array().unwrap()) {
        assert!((f(&x["modulus"]) - f(&y["modulus"])).abs() <= 1e-16);
    }
}

#[test]
fn overlap_tables() {
    let doc = json(&["overlap", "--z", "0.2", "--z", "0,0.3", "--z", "-0.4,0.1"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let at = |i: u64, j: u64| rows.iter().find(|r| r["i"] == i && r["j"] == j).unwrap();
    for i in 0..3 {
        assert!((f(&at(i, i)["closed_re"]) - 1.0).abs() < 1e-14);
        for j in 0..3 {
            assert!((f(&at(i, j)["closed_re"]) - f(&at(j, i)["closed_re"])).abs() < 1e-15);
            assert!((f(&at(i, j)["closed_im"]) + f(&at(j, i)["closed_im"])).abs() < 1e-15);
            assert!(f(&at(i, j)["abs_diff"]) <= 1e-10);
        }
    }
    let doc = json(&["overlap", "--gk", "0.2,0.5", "--gk", "0.2,0.5", "--gk", "0.1,-1"]);
    let rows = doc["rows"].as_array().unwrap();
    assert!((f(&rows[1]["series_re"]) - 1.0).abs() < 1e-14);
    assert!((f(&rows[1]["closed"]) - 1.0).abs() < 1e-14);
    assert!(rows[2]["closed"].is_null());
}

#[test]
fn verify_reports_errata_section() {
    let out = losc(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["passed"], true);
    assert_eq!(doc["meta"]["truncation"], 128);
    let errata = doc["errata"].as_array().unwrap();
    let sign = errata.iter().find(|c| c["name"] == "xp_commutator_printed_fraction_n1").unwrap();
    assert_eq!(sign["kind"], "erratum");
    assert_eq!(sign["passed"], false);
    assert!(doc["rows"].as_array().unwrap().iter().all(|c| c["kind"] == "hard" && c["passed"] == true));
}

#[test]
fn verify_failure_names_checks() {
    let out = losc(&["verify", "--truncation", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAILED eigenvector_interior_z0.6"), "{stderr}");
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = doc["rows"].as_array().unwrap().iter().find(|c| c["name"] == "eigenvector_interior_z0.6").unwrap();
    assert!(row["note"].as_str().unwrap().contains("truncation"));
}

#[test]
fn out_file_is_written_whole_or_not_at_all() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let p = path.to_str().unwrap();
    let out = losc(&["table", "--grid-j", "0:0.3:4", "--format", "csv", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("J,mean_H,mean_n_series"));

    let out = losc(&["table", "--grid-j", "0:0.5:4", "--out", p]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["table", "--grid-j", "0.3:0.1:3"],
        vec!["table", "--grid-j", "0:0.1"],
        vec!["eval", "--J", "0.3"],
        vec!["eval", "--z", "0.1", "--J", "0.2", "--gamma", "0"],
        vec!["eval", "--z", "0.1", "--grid-x", "-2:1:3"],
        vec!["overlap"],
        vec!["overlap", "--gk", "0.6,0"],
        vec!["verify", "--truncation", "2"],
        vec!["eval", "--J", "0.45", "--gamma", "0", "--truncation", "64"],
    ] {
        assert_eq!(losc(&args).status.code(), Some(2), "{args:?}");
    }
}
