use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ratiovec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratiovec"))
        .args(args)
        .env_remove("RATIOVEC_THREADS")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    ratiovec(args).status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let out = ratiovec(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn equality_instance_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq.json");
    std::fs::write(&path, r#"{"roots":[0,1,1.302776],"mults":[4,3,6]}"#).unwrap();
    let out = ratiovec(&["ratios", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for s in floats(&v["sigmas"]) {
        assert!((s - 0.361325).abs() < 1e-6, "{s}");
    }
}

#[test]
fn expressions_on_command_line() {
    let v = json(&["ratios", "--roots", "-1,0,4,6", "--mults", "3/2,1,sqrt(2),2"]);
    let s = floats(&v["sigmas"]);
    assert!(s[0] > s[2] && s[2] > s[1]);
    assert_eq!(floats(&v["mults"])[2], 2f64.sqrt());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["ratios", "--roots", "0,1,2", "--mults", "1,1,1"]), 0);
    assert_eq!(code(&["bounds", "--roots", "0,1,2", "--mults", "1,1,1"]), 0);
    assert_eq!(code(&["n3", "classify", "--mults", "1,1,1"]), 0);
    assert_eq!(code(&["n3", "classify", "--mults", "6,1,2"]), 1);
    assert_eq!(code(&["n3", "check", "--mults", "1,1,1", "--sigmas", "0.4,1/1.8"]), 0);
    assert_eq!(code(&["n3", "check", "--mults", "1,1,1", "--sigmas", "0.4,0.6"]), 1);
    assert_eq!(code(&["n3", "invert", "--mults", "1,1,1", "--sigma1", "0.4"]), 0);
    assert_eq!(code(&["n4", "member", "--mults", "1,1,1,1", "--sigmas", "0.3,0.5,0.9"]), 1);
    assert_eq!(code(&["n4", "reconstruct", "--mults", "1,1,1,1", "--sigmas", "0.3,0.5,0.9"]), 1);
    assert_eq!(code(&["n4", "t4", "--mults", "1,1,1,1"]), 0);
    assert_eq!(code(&["n4", "t4", "--mults", "3/2,1,sqrt(2),2"]), 1);
    assert_eq!(code(&["solve", "--mults", "1,1,1", "--sigmas", "0.4,1/1.8"]), 0);
    assert_eq!(code(&["degenerate", "--mults", "1,2,3"]), 0);

    // input errors
    assert_eq!(code(&["ratios", "--roots", "1,0", "--mults", "1,1"]), 2);
    assert_eq!(code(&["ratios", "--roots", "0,1", "--mults", "1,-1"]), 2);
    assert_eq!(code(&["ratios", "--roots", "0,1"]), 2);
    assert_eq!(code(&["ratios", "--roots", "0,1,", "--mults", "1,1"]), 2);
    assert_eq!(code(&["n3", "classify", "--mults", "1,1"]), 2);
    assert_eq!(code(&["n3", "invert", "--mults", "1,1,1", "--sigma1", "0.9"]), 2);
    assert_eq!(code(&["ratios", "--input", "/nonexistent/instance.json"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["scan", "bounds", "--n", "1"]), 2);

    // numerical failure
    assert_eq!(code(&["ratios", "--roots", "-1e308,0,1e308", "--mults", "1,1e300,1"]), 3);
}

#[test]
fn classify_report_fields() {
    let v = json(&["n3", "classify", "--mults", "6,1,2"]);
    assert_eq!(v["always"], false);
    assert_eq!(v["A"], false);
    assert!(v["violation_r"].as_f64().unwrap() > 1.0);
}

#[test]
fn member_report_fields() {
    let v = json(&["n4", "member", "--mults", "1,1,1,1", "--sigmas", "0.3,0.5,0.9"]);
    for key in ["d", "d1", "d2", "r_value", "verdict"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["verdict"], false);
}

#[test]
fn reconstruct_recovers_roots() {
    let v = json(&["n4", "reconstruct", "--mults", "1,1,1,1", "--sigmas", "0.4257862014,0.5352322764,0.6268746229"]);
    let roots = floats(&v["roots"]);
    assert!((roots[2] - 2.0).abs() < 1e-8 && (roots[3] - 4.0).abs() < 1e-8, "{roots:?}");
}

#[test]
fn json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let out = ratiovec(&[
        "ratios",
        "--roots",
        "-1,0,sqrt(3),pi",
        "--mults",
        "0.3,7,2/3,1",
        "--output",
        first.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&first).unwrap()).unwrap();
    let b = json(&["ratios", "--input", first.to_str().unwrap()]);
    assert_eq!(a["sigmas"], b["sigmas"]);
    assert_eq!(a, b);
}

#[test]
fn command_line_overrides_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.json");
    std::fs::write(&path, r#"{"roots":[0,1,2],"mults":[1,1,1]}"#).unwrap();
    let v = json(&["ratios", "--input", path.to_str().unwrap(), "--mults", "1,2,1"]);
    assert_eq!(floats(&v["mults"]), vec![1.0, 2.0, 1.0]);
}

#[test]
fn quiet_prints_nothing() {
    let out = ratiovec(&["n3", "classify", "--mults", "6,1,2", "--quiet"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
}

fn read_csv(bytes: &[u8]) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut r = csv::Reader::from_reader(bytes);
    let header = r.headers().unwrap().clone();
    (header, r.records().map(Result::unwrap).collect())
}

fn cell_floats(cell: &str) -> Vec<f64> {
    cell.split(';').map(|s| s.parse().unwrap()).collect()
}

#[test]
fn bounds_scan_rows_parse_back() {
    let out = ratiovec(&["scan", "bounds", "--n", "5", "--samples", "200", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = read_csv(&out.stdout);
    assert_eq!(&header, vec!["index", "roots", "mults", "sigmas", "lower", "upper", "inside"]);
    assert_eq!(rows.len(), 200);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0].parse::<usize>().unwrap(), i);
        let roots = cell_floats(&row[1]);
        let mults = cell_floats(&row[2]);
        let sigmas = cell_floats(&row[3]);
        assert_eq!(row[6].to_string(), "true");
        // re-ingest the row and recompute: lossless cells give identical sigmas
        let args = [
            "ratios".to_string(),
            "--roots".into(),
            row[1].replace(';', ","),
            "--mults".into(),
            row[2].replace(';', ","),
        ];
        if i < 5 {
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let v = json(&args);
            assert_eq!(floats(&v["roots"]), roots);
            assert_eq!(floats(&v["mults"]), mults);
            assert_eq!(floats(&v["sigmas"]), sigmas);
        }
    }
}

#[test]
fn scans_are_deterministic_and_resumable() {
    let full = ratiovec(&["scan", "t1", "--samples", "300", "--seed", "4"]);
    assert_eq!(full.status.code(), Some(0));
    let again = Command::new(env!("CARGO_BIN_EXE_ratiovec"))
        .args(["scan", "t1", "--samples", "300", "--seed", "4"])
        .env("RATIOVEC_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(full.stdout, again.stdout);

    let resumed = ratiovec(&["scan", "t1", "--samples", "300", "--seed", "4", "--skip", "250"]);
    let (_, all) = read_csv(&full.stdout);
    let (_, tail) = read_csv(&resumed.stdout);
    assert_eq!(tail.len(), 50);
    assert_eq!(&all[250..], &tail[..]);

    let other = ratiovec(&["scan", "t1", "--samples", "300", "--seed", "5"]);
    assert_ne!(full.stdout, other.stdout);
}

#[test]
fn monotonicity_scan_columns() {
    let out = ratiovec(&["scan", "monotonicity", "--max-mult", "3", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = read_csv(&out.stdout);
    assert_eq!(rows.len(), 27 * 10);
    let agree = header.iter().position(|h| h == "h_agrees").unwrap();
    assert!(rows.iter().all(|r| &r[agree] == "true"));
}

#[test]
fn t4_scan_has_no_non_monotone_rows() {
    let out = ratiovec(&["scan", "t4", "--samples", "200", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| r["monotone"] == true));
}

#[test]
fn conjecture_is_deterministic() {
    let args = ["conjecture", "--n", "4", "--budget", "800", "--seed", "2"];
    assert_eq!(ratiovec(&args).stdout, ratiovec(&args).stdout);
    let v = json(&args);
    assert_eq!(v["evaluations"], 800);
    assert!(v["best_gap"].as_f64().unwrap() > 0.0);
}

#[test]
fn bad_thread_count_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_ratiovec"))
        .args(["scan", "t1", "--samples", "3"])
        .env("RATIOVEC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_report_for_single_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = ratiovec(&[
        "bounds",
        "--roots",
        "0,1,3",
        "--mults",
        "1,2,1",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read(Path::new(&path)).unwrap();
    let (header, rows) = read_csv(&text);
    assert_eq!(rows.len(), 1);
    let col = header.iter().position(|h| h == "all_strictly_inside").unwrap();
    assert_eq!(&rows[0][col], "true");
}
