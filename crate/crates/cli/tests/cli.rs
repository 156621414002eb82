use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

const IV5: &str = r#"{"factors":[{"kind":"IV","n":5}]}"#;
const DISC: &str = r#"{"factors":[{"kind":"I","n":1,"m":1}]}"#;

fn hartogs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hartogs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("report written"))
        .expect("valid JSON")
}

#[test]
fn invariants_prints_the_type_iv_row() {
    let o = hartogs(&["invariants", "--domain", IV5]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(5,2,3,0,5)"), "{}", stdout(&o));
}

#[test]
fn invariants_without_domain_lists_all_six_kinds() {
    let o = hartogs(&["invariants"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for row in [
        "(6,2,2,1,5)",
        "(15,3,4,0,10)",
        "(6,3,1,0,4)",
        "(5,2,3,0,5)",
        "(16,2,6,4,12)",
        "(27,3,8,0,18)",
    ] {
        assert!(text.contains(row), "missing {row}");
    }
}

#[test]
fn passing_checks_exit_zero_and_write_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = hartogs(&[
        "verify",
        "--domain",
        IV5,
        "--mu",
        "1.5",
        "--checks",
        "invariants_table,norm_factorization,christoffel_vanishing",
        "--samples",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = read_json(&out);
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
    assert_eq!(report["config"]["domain"]["mu"], 1.5);
}

#[test]
fn reports_are_byte_identical_across_runs_and_paths() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let o = hartogs(&[
            "verify",
            "--domain",
            IV5,
            "--checks",
            "metric_block_diagonal,derivative_crosscheck",
            "--samples",
            "6",
            "--seed",
            "7",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    assert_eq!(
        std::fs::read(&paths[0]).unwrap(),
        std::fs::read(&paths[1]).unwrap()
    );
}

#[test]
fn failing_check_exits_one_and_marks_only_the_control() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = hartogs(&[
        "verify",
        "--domain",
        IV5,
        "--checks",
        "invariants_table,negative_control",
        "--samples",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report = read_json(&out);
    let failed: Vec<&str> = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == Value::Bool(false))
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["negative_control"]);
}

#[test]
fn unknown_check_is_a_config_error() {
    let o = hartogs(&["verify", "--domain", IV5, "--checks", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bogus"));
}

#[test]
fn missing_domain_is_a_config_error() {
    let o = hartogs(&["verify", "--checks", "all"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_domain_and_tolerance_are_config_errors() {
    assert_eq!(
        hartogs(&["verify", "--domain", r#"{"factors":[{"kind":"VII"}]}"#])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hartogs(&["verify", "--domain", r#"{"factors":[{"kind":"IV","n":2}]}"#])
            .status
            .code(),
        Some(2)
    );
    let o = hartogs(&[
        "verify",
        "--domain",
        IV5,
        "--checks",
        "invariants_table",
        "--tol",
        "nonsense=1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nonsense"));
}

#[test]
fn tolerance_flag_is_applied() {
    let o = hartogs(&[
        "verify",
        "--domain",
        IV5,
        "--checks",
        "octonion_suite",
        "--tol",
        "1e-3",
        "--tol",
        "algebra=1e-20",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["config"]["tolerances"]["norm"], 1e-3);
    assert_eq!(report["rows"][0]["tolerance"], 1e-20);
}

#[test]
fn config_file_with_empty_check_list_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.json");
    std::fs::write(&cfg, format!(r#"{{"domain": {IV5}, "checks": []}}"#)).unwrap();
    let o = hartogs(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn config_file_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.json");
    std::fs::write(&cfg, format!(r#"{{"domain": {IV5}, "sample": 3}}"#)).unwrap();
    assert_eq!(
        hartogs(&["verify", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("absent.json");
    let o = hartogs(&["verify", "--config", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("absent.json"));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.json");
    std::fs::write(
        &cfg,
        format!(r#"{{"domain": {IV5}, "checks": ["negative_control"], "seed": 1}}"#),
    )
    .unwrap();
    let o = hartogs(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--checks",
        "invariants_table",
        "--seed",
        "9",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["config"]["seed"], 9);
}

#[test]
fn text_report_lists_statements() {
    let o = hartogs(&[
        "verify",
        "--domain",
        IV5,
        "--checks",
        "invariants_table",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("invariants_table"));
    assert!(text.contains("1/1 checks passed"));
}

#[test]
fn zero_velocity_geodesic_is_constant() {
    let o = hartogs(&[
        "geodesic",
        "--domain",
        DISC,
        "--start",
        "[[0.1,0.0],[0.2,-0.1]]",
        "--t-end",
        "0.01",
        "--step",
        "0.001",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,re_0,im_0,re_1,im_1,energy"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert_eq!(&r[1..], &[0.1, 0.0, 0.2, -0.1, 0.0]);
    }
}

#[test]
fn geodesic_csv_is_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.csv");
    let o = hartogs(&[
        "geodesic",
        "--domain",
        DISC,
        "--kind",
        "base",
        "--velocity",
        "[[0.5,0.0]]",
        "--t-end",
        "0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 102);
}

#[test]
fn metric_at_origin_is_diagonal() {
    let o = hartogs(&["metric", "--domain", DISC, "--mu", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(
        rows[0],
        "+1.0000000000e0+0.0000000000e0i +0.0000000000e0+0.0000000000e0i"
    );
    assert_eq!(
        rows[1],
        "+0.0000000000e0+0.0000000000e0i +2.0000000000e0+0.0000000000e0i"
    );
}

#[test]
fn metric_outside_domain_exits_two() {
    let o = hartogs(&["metric", "--domain", DISC, "--point", "[[0,0],[2,0]]"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hartogs(&["metric", "--domain", DISC, "--point", "[[0,0]]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn curvature_reports_the_disc_values() {
    let o = hartogs(&["curvature", "--domain", DISC, "--kind", "base"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let cols: Vec<f64> = last
        .split('\t')
        .skip(1)
        .map(|x| x.parse().unwrap())
        .collect();
    assert!(
        (cols[0] + 2.0).abs() < 1e-10 && (cols[1] + 4.0).abs() < 1e-10,
        "{last}"
    );
    let o = hartogs(&[
        "curvature",
        "--domain",
        DISC,
        "--kind",
        "dual-base",
        "--plane",
        "0,1",
    ]);
    let last = stdout(&o).lines().last().unwrap().to_string();
    let cols: Vec<f64> = last
        .split('\t')
        .skip(1)
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((cols[1] - 4.0).abs() < 1e-10, "{last}");
}
