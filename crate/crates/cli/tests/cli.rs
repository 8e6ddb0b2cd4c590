use std::process::{Command, Output};

use serde_json::Value;

fn pretzel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pretzel"))
        .args(args)
        .env_remove("PRETZEL_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = pretzel(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn bounds_p333_is_exact() {
    let o = pretzel(&["bounds", "P(3,3,3)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("u=3"), "{out}");
    assert!(out.contains("jones-parity-reduction"));
    assert!(out.contains("traczyk-parity"));
    let v = json(&["bounds", "P(3,3,3)"]);
    assert_eq!(v["lower"], 3);
    assert_eq!(v["upper"], 3);
    assert_eq!(v["exact"], 3);
}

#[test]
fn obstruct_p313() {
    let o = pretzel(&["obstruct", "P(3,1,3)", "--delta", "2,4,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("obstructed up to rank 6"));
    let v = json(&["obstruct", "P(3,1,1)", "--delta", "2"]);
    assert_eq!(v["verdict"]["kind"], "not_obstructed");
    assert!(v["entries"][0]["witness"]["certificate"]["x"].is_array());
}

#[test]
fn family_scan_matches_formula_and_single_bounds() {
    let o = pretzel(&["scan", "--family", "P(3,1^r,b)", "--r", "1..5", "--b", "3..9", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    let h = rd.headers().unwrap().clone();
    let col = |name: &str| h.iter().position(|x| x == name).unwrap();
    let rows: Vec<_> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 12);
    for row in &rows {
        assert_eq!(row[col("exact")], row[col("(r+3)/2")], "{row:?}");
    }
    // one row checked against a direct bounds call
    let v = json(&["bounds", &rows[5][col("knot")]]);
    assert_eq!(v["exact"].to_string(), rows[5][col("exact")]);
}

#[test]
fn json_round_trip_keeps_values() {
    let v = json(&["bounds", "P(5,3,1,1,1)"]);
    let text = serde_json::to_string(&v).unwrap();
    let back: pretzel_core::bounds::BoundsReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&back).unwrap(), v);
    assert_eq!(Some(back.lower), v["lower"].as_i64());
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    let cases: [&[&str]; 5] = [
        &["bounds", "P(3,5,7)", "--json"],
        &["obstruct", "P(3,1,3)", "--json"],
        &["jones", "P(3,3)", "--orientation", "antiparallel", "--json"],
        &["omega", "P(9,9,3)", "--json"],
        &["invariants", "P(3,1,3)", "--json"],
    ];
    for args in cases {
        let plain = stdout(&pretzel(args));
        let mut with = args.to_vec();
        with.extend(["--cache", p]);
        let first = stdout(&pretzel(&with));
        let second = stdout(&pretzel(&with));
        assert_eq!(plain, first, "{args:?}");
        assert_eq!(plain, second, "{args:?}");
    }
    assert!(std::fs::read_to_string(&path).unwrap().lines().count() >= 5);
    let o = pretzel(&["selftest", "--cache", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    let o = pretzel(&["bounds", "P(3,0,3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 4"));
    assert_eq!(pretzel(&["bounds", "P(3,3)"]).status.code(), Some(1));
    assert_eq!(pretzel(&["obstruct", "P(3,5,7)"]).status.code(), Some(1));
    assert_eq!(pretzel(&["bounds", "P(3,1,1,1,3)", "--budget", "10"]).status.code(), Some(2));
    assert_eq!(pretzel(&["obstruct", "P(3,1,3)", "--budget", "5"]).status.code(), Some(2));
    assert_eq!(pretzel(&["--help"]).status.code(), Some(0));
    assert_eq!(pretzel(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn jones_check_and_links() {
    let o = pretzel(&["jones", "P(1,1,1)", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("-q^-4 + q^-3 + q^-1"), "{out}");
    let v = json(&["omega", "P(3,3)", "--orientation", "antiparallel"]);
    assert_eq!(v["norm"], 3);
    assert_eq!((v["r"].as_i64(), v["s"].as_i64(), v["d"].as_i64()), (Some(2), Some(0), Some(1)));
}

#[test]
fn grid_scan_has_no_violation() {
    let v = json(&["scan", "--grid", "3", "--max", "5"]);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 10);
    assert!(recs.iter().all(|r| r["status"] != "violated"));
    assert!(recs.iter().any(|r| r["params"] == serde_json::json!([3, 3, 3]) && r["status"] == "proved-equal"));
}
