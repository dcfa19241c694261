#![cfg(feature = "cli")]

use std::process::Command;

use serde_json::Value;
use trigonal::cli::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use trigonal::formio::ReportJson;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("trigonal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

const REPORT_KEYS: [&str; 20] = [
    "schema",
    "b",
    "family",
    "r",
    "s",
    "a2",
    "b2",
    "a3",
    "b3",
    "c",
    "N",
    "mode",
    "conditions",
    "rank_iii",
    "rank_iv",
    "kernel_dim",
    "attempts",
    "pass",
    "elapsed_ms",
    "error",
];

fn assert_report_schema(v: &Value) {
    let obj = v.as_object().unwrap();
    for k in obj.keys() {
        assert!(REPORT_KEYS.contains(&k.as_str()), "unexpected key {k}");
    }
    for k in &REPORT_KEYS[..19] {
        assert!(obj.contains_key(*k), "missing key {k}");
    }
    assert_eq!(v["schema"], 1);
    let conds = v["conditions"].as_object().unwrap();
    assert_eq!(conds.keys().collect::<Vec<_>>(), ["i", "ii", "iii", "iv"]);
    // the struct deserializes back from its own output
    let _: ReportJson = serde_json::from_value(v.clone()).unwrap();
}

#[test]
fn verify_json_report() {
    let (code, out, _) = cli(&[
        "verify", "--b", "13", "--mode", "witness", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    let r = &lines[0];
    assert_report_schema(r);
    assert_eq!(r["pass"], true);
    assert_eq!(r["b"], 13);
    assert_eq!(r["family"], "B5n3");
    assert_eq!((r["c"].as_u64(), r["N"].as_u64()), (Some(3), Some(16)));
    assert_eq!(r["kernel_dim"], 3);
}

#[test]
fn even_and_small_b_are_usage_errors() {
    for b in ["6", "3", "-5"] {
        let (code, _, err) = cli(&["verify", "--b", b]);
        assert_eq!(code, EXIT_USAGE, "b={b}");
        assert!(!err.is_empty());
    }
}

#[test]
fn unknown_flags_print_usage() {
    let (code, out, err) = cli(&["verify", "--b", "5", "--bogus"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("Usage"), "{err}");
    let (code, _, _) = cli(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = cli(&["verify-range", "--from", "5", "--to", "9", "--jobs", "0"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn tampered_runs_exit_one() {
    for m in ["zero_w", "duplicate_w", "perturb_v"] {
        let (code, out, _) = cli(&["verify", "--b", "9", "--tamper", m, "--format", "json"]);
        assert_eq!(code, EXIT_FAIL, "{m}");
        assert_eq!(json_lines(&out)[0]["pass"], false);
    }
}

#[test]
fn transvect_calculator() {
    let (code, out, _) = cli(&[
        "transvect",
        "--r",
        "1",
        "--s",
        "1",
        "--lhs",
        "x^2*X^2",
        "--rhs",
        "y^2*Y^2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "x*y*X*Y\n");
    let (code, out, _) = cli(&[
        "transvect",
        "--r",
        "0",
        "--s",
        "0",
        "--lhs",
        "0",
        "--lhs-bidegree",
        "1,2",
        "--rhs",
        "x*Y",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "0\n");
    let (code, _, _) = cli(&[
        "transvect",
        "--r",
        "2",
        "--s",
        "0",
        "--lhs",
        "x*X",
        "--rhs",
        "y*Y",
    ]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = cli(&[
        "transvect",
        "--r",
        "0",
        "--s",
        "0",
        "--lhs",
        "x^",
        "--rhs",
        "y",
    ]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn schedule_and_dims_queries() {
    let (code, out, _) = cli(&["schedule", "--from", "5", "--to", "15", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let rows = json_lines(&out);
    assert_eq!(
        rows.iter()
            .map(|r| r["b"].as_i64().unwrap())
            .collect::<Vec<_>>(),
        [5, 7, 9, 11, 13, 15]
    );
    assert_eq!(rows[1]["family"], "B7");
    assert_eq!(rows[1]["N"], 16);

    let (code, out, _) = cli(&["dims", "--b", "7", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let d = &json_lines(&out)[0];
    assert_eq!(
        (d["moduli_dim"].as_u64(), d["dim_V"].as_u64()),
        (Some(25), Some(32))
    );

    let (code, out, _) = cli(&["dims", "--genus", "8"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("(3, 5)"), "{out}");
    let (code, _, _) = cli(&["dims", "--genus", "7"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn range_output_is_ordered_and_jobs_independent() {
    let base = [
        "verify-range",
        "--from",
        "5",
        "--to",
        "31",
        "--mode",
        "both",
        "--format",
        "json",
        "--no-timing",
    ];
    let (code1, out1, _) = cli(&[&base[..], &["--jobs", "1"]].concat());
    let (code4, out4, _) = cli(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!((code1, code4), (EXIT_OK, EXIT_OK));
    assert_eq!(out1, out4);
    let rows = json_lines(&out1);
    assert_eq!(rows.len(), 14);
    let bs: Vec<i64> = rows.iter().map(|r| r["b"].as_i64().unwrap()).collect();
    assert!(bs.windows(2).all(|w| w[0] + 2 == w[1]));
    for r in &rows {
        assert_report_schema(r);
        assert_eq!(r["mode"], "both");
        assert_eq!(r["elapsed_ms"], 0);
    }
    // byte-stable across repeated runs
    assert_eq!(cli(&[&base[..], &["--jobs", "3"]].concat()).1, out1);
}

#[test]
fn range_with_even_endpoints_visits_odd_b_only() {
    let (code, out, _) = cli(&[
        "verify-range",
        "--from",
        "4",
        "--to",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let bs: Vec<i64> = json_lines(&out)
        .iter()
        .map(|r| r["b"].as_i64().unwrap())
        .collect();
    assert_eq!(bs, [5, 7, 9]);
    let (code, _, _) = cli(&["verify-range", "--from", "9", "--to", "5"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn range_reports_input_errors_in_place() {
    let (code, out, _) = cli(&[
        "verify-range",
        "--from",
        "1",
        "--to",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_USAGE);
    let rows = json_lines(&out);
    assert_eq!(
        rows.iter()
            .map(|r| r["b"].as_i64().unwrap())
            .collect::<Vec<_>>(),
        [1, 3, 5, 7]
    );
    assert!(rows[0]["error"].is_string());
    assert_eq!(rows[2]["pass"], true);
}

#[test]
fn text_output_has_table_and_summary() {
    let (code, out, _) = cli(&["verify-range", "--from", "5", "--to", "9"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].contains("family"));
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("3 b checked: 3 passed"));
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_trigonal");
    let ok = Command::new(exe)
        .args(["verify", "--b", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(exe)
        .args(["verify", "--b", "6"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let fail = Command::new(exe)
        .args(["verify", "--b", "5", "--tamper", "zero_w"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_FAIL));
    let none = Command::new(exe).output().unwrap();
    assert_eq!(none.status.code(), Some(EXIT_USAGE));
}
