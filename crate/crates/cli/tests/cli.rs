//! End-to-end tests of the `upsilon` binary: output schemas, exit codes,
//! determinism under parallelism, and input round trips.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_upsilon"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().expect("exit code"),
    )
}

fn run_json(args: &[&str]) -> serde_json::Value {
    let (stdout, stderr, code) = run(args);
    assert_eq!(code, 0, "args={args:?}, stderr={stderr}");
    serde_json::from_str(&stdout).expect("valid json")
}

#[test]
fn orders_twisted_6_1() {
    let v = run_json(&["orders", "--knot", "twisted:6,1"]);
    assert_eq!(v["knot"], "twisted:6,1");
    assert_eq!(v["ord"], 5);
    assert_eq!(v["ord_prime"], "2/1");
    assert_eq!(v["genus"], 16);
}

#[test]
fn record_field_order_is_fixed() {
    let (stdout, _, code) = run(&["orders", "--knot", "torus:2,3"]);
    assert_eq!(code, 0);
    let positions: Vec<usize> = ["\"knot\"", "\"alexander\"", "\"gaps\"", "\"genus\"", "\"upsilon\"", "\"ord\"", "\"ord_prime\""]
        .iter()
        .map(|field| stdout.find(field).unwrap_or_else(|| panic!("missing {field}")))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "fields out of order");
}

#[test]
fn verify_passes_for_known_families() {
    for knot in ["twisted:2,3", "twisted:5,1", "twisted:3,2", "torus:5,6", "gaps:1,1"] {
        let (stdout, stderr, code) = run(&["verify", "--knot", knot]);
        assert_eq!(code, 0, "knot={knot}, stderr={stderr}");
        let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
        let checks = v["checks"].as_array().expect("checks array");
        assert!(!checks.is_empty());
        for c in checks {
            assert_eq!(c["pass"], true, "knot={knot}, check={}", c["name"]);
        }
    }
}

#[test]
fn verify_csv_lists_checks() {
    let (stdout, _, code) = run(&["verify", "--knot", "torus:4,5", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("check,pass"));
    assert!(stdout.contains("torus_ord_prime_floor_half,true"));
    assert!(stdout.contains("barcode_oracle_agreement,true"));
}

#[test]
fn gaps_csv_torus_2_5() {
    let (stdout, _, code) = run(&["gaps", "--knot", "torus:2,5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1,1,1,1");
}

#[test]
fn invalid_inputs_exit_1_with_named_field() {
    let cases = [
        (vec!["orders", "--knot", "torus:4,2"], "torus"),
        (vec!["orders", "--knot", "twisted:1,1"], "twisted"),
        (vec!["orders", "--knot", "gaps:1,2,1"], "gap"),
        (vec!["orders", "--knot", "alex:1,1,1"], "L-space"),
        (vec!["orders", "--knot", "wibble:1,2"], "knot form"),
        (vec!["sweep", "--p-range", "9..4", "--k-range", "1..2"], "--p-range"),
        (vec!["sweep", "--p-range", "4..5", "--k-range", "x..2"], "--k-range"),
        (vec!["sweep", "--p-range", "1..5", "--k-range", "1..2"], "--p-range"),
    ];
    for (args, needle) in cases {
        let (_, stderr, code) = run(&args);
        assert_eq!(code, 1, "args={args:?}");
        assert!(
            stderr.contains(needle),
            "stderr for {args:?} should mention '{needle}': {stderr}"
        );
    }
}

#[test]
fn usage_errors_exit_1() {
    let (_, stderr, code) = run(&["orders", "--knot", "twisted:6,1", "--samples", "3"]);
    assert_eq!(code, 1, "unknown flag is invalid input: {stderr}");
    let (_, _, code) = run(&["--help"]);
    assert_eq!(code, 0);
    let (_, stderr, code) = run(&["upsilon", "--knot", "torus:2,3", "--format", "csv", "--samples", "0"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--samples"));
}

#[test]
fn sweep_is_deterministic_across_jobs() {
    let base = ["sweep", "--p-range", "4..7", "--k-range", "1..2"];
    for format in ["json", "csv"] {
        let mut with_one = base.to_vec();
        with_one.extend(["--jobs", "1", "--format", format]);
        let mut with_many = base.to_vec();
        with_many.extend(["--jobs", "8", "--format", format]);
        let (a, _, code_a) = run(&with_one);
        let (b, _, code_b) = run(&with_many);
        assert_eq!(code_a, 0);
        assert_eq!(code_b, 0);
        assert_eq!(a, b, "format={format}");
    }
}

#[test]
fn sweep_rows_match_closed_orders() {
    let v = run_json(&["sweep", "--p-range", "4..9", "--k-range", "1..1"]);
    let rows = v.as_array().expect("array of rows");
    assert_eq!(rows.len(), 6);
    for row in rows {
        let p = row["p"].as_u64().expect("p");
        assert_eq!(row["ord"].as_u64().expect("ord"), p - 1);
        assert_eq!(
            row["ord_prime"].as_str().expect("ord_prime"),
            format!("{}/1", (p - 2) / 2)
        );
    }
}

#[test]
fn alexander_csv_round_trips_through_alex_input() {
    let (dense, _, code) = run(&["alexander", "--knot", "twisted:3,1", "--format", "csv"]);
    assert_eq!(code, 0);
    let alex_spec = format!("alex:{}", dense.trim());

    let direct = run_json(&["orders", "--knot", "twisted:3,1"]);
    let round = run_json(&["orders", "--knot", &alex_spec]);
    for field in ["alexander", "gaps", "genus", "upsilon", "ord", "ord_prime"] {
        assert_eq!(direct[field], round[field], "field {field}");
    }
}

#[test]
fn upsilon_value_at_one_matches_orders() {
    let v = run_json(&["orders", "--knot", "twisted:7,2"]);
    let upsilon = v["upsilon"].as_array().expect("breakpoints");
    let at_one = upsilon
        .iter()
        .find(|b| b["t"] == "1/1")
        .expect("breakpoint at t=1");
    assert_eq!(at_one["value"], v["ord_prime"]);
}

#[test]
fn upsilon_csv_sample_stream() {
    let (stdout, _, code) = run(&[
        "upsilon",
        "--knot",
        "torus:2,3",
        "--format",
        "csv",
        "--samples",
        "8",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    // header + 3 breakpoints + 9 samples
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[0], "t,value");
    assert_eq!(lines[1], "0,0");
    assert!(lines[4].starts_with("0,"));
    assert_eq!(lines.last().unwrap(), &"2.00000000000,0");
}

#[test]
fn staircase_json_schema() {
    let v = run_json(&["staircase", "--knot", "twisted:4,1"]);
    let generators = v["staircase"]["generators"].as_array().expect("generators");
    let arrows = v["staircase"]["arrows"].as_array().expect("arrows");
    assert_eq!(generators.len(), 11);
    assert_eq!(arrows.len(), 10);
    assert_eq!(generators[0]["x"], 0);
    assert_eq!(generators[0]["y"], 7);
    assert_eq!(generators[10]["x"], 7);
    assert_eq!(generators[10]["y"], 0);
    for a in arrows {
        let src = a["source"].as_u64().expect("source") as usize;
        assert_eq!(generators[src]["grading"], 1);
    }
}

#[test]
fn negated_alexander_warns_and_proceeds() {
    let (stdout, stderr, code) = run(&["gaps", "--knot", "alex:-1,1,-1"]);
    assert_eq!(code, 0);
    assert!(stderr.contains("negated"));
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["gaps"], serde_json::json!([1, 1]));
}

#[test]
fn unknot_inputs_work_end_to_end() {
    let v = run_json(&["orders", "--knot", "gaps:"]);
    assert_eq!(v["ord"], 0);
    assert_eq!(v["ord_prime"], "0/1");
    let v = run_json(&["orders", "--knot", "alex:1"]);
    assert_eq!(v["ord"], 0);
}
