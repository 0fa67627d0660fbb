use std::process::{Command, Output};

use serde_json::Value;

fn lscvt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lscvt"))
        .args(args)
        .output()
        .expect("failed to launch lscvt")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is not JSON")
}

#[test]
fn pbm_for_level3_has_nine_active_cells() {
    let out = lscvt(&["pattern", "--level", "3", "--format", "pbm"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let body: String = text.lines().skip(2).collect();
    assert!(text.starts_with("P1\n4 4\n"));
    assert_eq!(body.matches('1').count(), 9);
}

#[test]
fn pattern_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("level7.pbm");
    let out = lscvt(&[
        "pattern",
        "--level",
        "7",
        "--format",
        "pbm",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("P1\n8 8\n"));
    assert_eq!(written.lines().count(), 10);

    let bad = lscvt(&[
        "pattern",
        "--level",
        "1",
        "--out",
        dir.path().join("no/such/dir").to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn pattern_argument_errors() {
    let out = lscvt(&["pattern", "--level", "0", "--order", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    assert_eq!(lscvt(&["pattern", "--level", "-1"]).status.code(), Some(2));
    assert_eq!(
        lscvt(&["pattern", "--level", "3", "--order", "8192"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn dimension_of_level_255() {
    let out = lscvt(&["dimension", "--level", "255"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let slope = v["slope"].as_f64().unwrap();
    assert!((slope - 3f64.ln() / 2f64.ln()).abs() < 1e-9);
    assert!(v["residual"].as_f64().unwrap() < 1e-9);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 8);
    assert_eq!(points[0], serde_json::json!([1, 6561]));
    assert_eq!(points[7], serde_json::json!([128, 3]));
}

#[test]
fn dimension_errors() {
    assert_eq!(lscvt(&["dimension", "--level", "1"]).status.code(), Some(2));
    assert_eq!(
        lscvt(&["dimension", "--level", "4", "--rule", "255"])
            .status
            .code(),
        Some(1)
    );
    let rule0 = lscvt(&["dimension", "--level", "4", "--rule", "0"]);
    assert_eq!(rule0.status.code(), Some(0));
    assert!((json(&rule0)["slope"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn efficiency_json_carries_width4_note() {
    let out = lscvt(&["efficiency", "--max-width", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3]["standby_ports"], 175);
    assert!(rows[3]["note"].as_str().unwrap().contains("172/256"));
    assert!(rows[2].get("note").is_none());
}

#[test]
fn simulate_reports() {
    let w1 = json(&lscvt(&["simulate", "--width", "1"]));
    assert_eq!(w1["ticks_run"], 4);
    assert_eq!(
        w1["per_cell_standby_counts"],
        serde_json::json!([[1, 1], [1, 1]])
    );

    let w2 = json(&lscvt(&["simulate", "--width", "2"]));
    assert_eq!(w2["min_standby_fraction"].as_f64(), Some(7.0 / 16.0));
    assert_eq!(w2["max_standby_fraction"].as_f64(), Some(7.0 / 16.0));

    let partial = json(&lscvt(&["simulate", "--width", "2", "--ticks", "5"]));
    let total: u64 = partial["per_cell_standby_counts"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|row| row.as_array().unwrap())
        .map(|c| c.as_u64().unwrap())
        .sum();
    assert_eq!(total, 5 * 7);

    assert_eq!(lscvt(&["simulate", "--width", "9"]).status.code(), Some(2));
}

#[test]
fn cdma_demo() {
    let ok = lscvt(&["cdma", "--k", "2", "--data", "3,-1,0,2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["decoded"], serde_json::json!([3, -1, 0, 2]));

    let single = lscvt(&["cdma", "--k", "0", "--data", "7"]);
    assert_eq!(json(&single)["decoded"], serde_json::json!([7]));

    assert_eq!(
        lscvt(&["cdma", "--k", "1", "--data", "1,2,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lscvt(&["cdma", "--k", "1", "--data", "x"]).status.code(),
        Some(2)
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["pattern", "--level", "100", "--format", "pgm-values"][..],
        &["dimension", "--level", "255"],
        &["efficiency", "--max-width", "12"],
        &["simulate", "--width", "3", "--format", "csv"],
        &["cdma", "--k", "3", "--data", "-4,9,0,1,1"],
    ] {
        let a = lscvt(args);
        let b = lscvt(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
