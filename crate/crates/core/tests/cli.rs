use std::path::Path;
use std::process::{Command, Output};

fn ineq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ineq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_clean_run_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = ineq(&[
        "verify",
        "--theorems",
        "thm2.1,prop7.12",
        "--trials",
        "50",
        "--dims",
        "1,4",
        "--output",
        arg(&out),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r = json(&out);
    assert_eq!(r["aggregate"]["count"], 2 * 50 * 2 * 2);
    assert_eq!(r["aggregate"]["violations"], 0);
    assert_eq!(
        r["metadata"]["theorems"],
        serde_json::json!(["thm2.1", "prop7.12"])
    );
    assert_eq!(r["records"].as_array().unwrap().len(), 0);
}

#[test]
fn adversarial_failures_are_counterexamples_not_violations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("adv.json");
    let o = ineq(&[
        "verify",
        "--theorems",
        "thm2.2",
        "--trials",
        "100",
        "--dims",
        "3",
        "--field",
        "complex",
        "--adversarial",
        "--output",
        arg(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&out);
    assert!(r["aggregate"]["counterexamples"].as_u64().unwrap() > 0);
    assert_eq!(r["aggregate"]["admissible"], 0);
    for rec in r["records"].as_array().unwrap() {
        assert_eq!(rec["admissible"], false);
        assert!(rec["instance"].is_object());
    }
}

#[test]
fn zero_tolerance_is_accepted() {
    let o = ineq(&[
        "verify",
        "--theorems",
        "thm5.2",
        "--trials",
        "30",
        "--tol",
        "0",
        "--records",
        "none",
    ]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["metadata"]["tolerance"], 0.0);
}

#[test]
fn verify_csv_has_one_row_per_record() {
    let o = ineq(&[
        "verify",
        "--theorems",
        "legacy1.3",
        "--trials",
        "5",
        "--dims",
        "2",
        "--field",
        "real",
        "--records",
        "all",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert!(rows.headers().unwrap().iter().any(|h| h == "gap"));
    assert_eq!(rows.records().count(), 5);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["verify", "--theorems", "thm9.9"][..],
        &["verify", "--dims", "0", "--trials", "1"][..],
        &["verify", "--trials", "1", "--tol=-1e-9"][..],
        &[
            "sharpness",
            "--construction",
            "thm22",
            "--eps-grid",
            "1e-3:2:4",
        ][..],
        &["sharpness", "--eps-grid", "oops"][..],
        &["eval", "--input", "/nonexistent/instances.json"][..],
        &["frobnicate"][..],
    ] {
        let o = ineq(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn eval_round_trip_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let out = dir.path().join("out.json");
    std::fs::write(
        &input,
        r#"{"instances": [
            {"theorem": "thm2.2", "field": "real", "x": [2, 1], "y": [1, 1], "pair": {"lo": 1, "hi": 2}},
            {"theorem": "thm2.1", "field": "complex", "x": [[1, 0.25], [0, 0]], "a": [1, 0], "r": 0.5}
        ]}"#,
    )
    .unwrap();
    let o = ineq(&["eval", "--input", arg(&input), "--output", arg(&out)]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r = json(&out);
    let recs = r["records"].as_array().unwrap();
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["outcome"], "pass");
    assert!((recs[0]["gap"].as_f64().unwrap() - 0.16227766016837933).abs() < 1e-12);

    // A narrow pair puts x outside the hypothesis and the bound fails.
    std::fs::write(
        &input,
        r#"{"instances": [{"theorem": "thm2.2", "field": "real", "x": [3, 1], "y": [1, 1], "pair": {"lo": 1, "hi": 1.01}}]}"#,
    )
    .unwrap();
    let o = ineq(&["eval", "--input", arg(&input), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("counterexample"), "{text}");

    std::fs::write(
        &input,
        r#"{"instances": [{"theorem": "thm2.2", "field": "real", "x": [1]}]}"#,
    )
    .unwrap();
    let o = ineq(&["eval", "--input", arg(&input)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing parameter"));
}

#[test]
fn sharpness_reports_the_sweep() {
    let o = ineq(&[
        "sharpness",
        "--construction",
        "thm21",
        "--eps-grid",
        "1e-6:1:7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["construction"], "thm21");
    let ratios: Vec<f64> = r["ratios"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(ratios.len(), 7);
    assert!(ratios.windows(2).all(|w| w[1] > w[0]));
    assert!((r["extrapolated_limit"].as_f64().unwrap() - 1.0).abs() < 1e-3);

    let o = ineq(&["sharpness", "--construction", "legacy11"]);
    assert_eq!(o.status.code(), Some(0));
}
