//! End-to-end contract tests against the built binary: exit codes, report
//! schema, and byte-level determinism.

use std::process::{Command, Output};

fn kgdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_defaults_pass_with_schema_valid_json() {
    let out = kgdist(&["verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let obj = report.as_object().expect("object");
    for key in ["config", "checks", "sweeps", "verdict"] {
        assert!(obj.contains_key(key), "missing top-level key {key}");
    }
    assert_eq!(report["verdict"], "pass");

    let checks = report["checks"].as_array().expect("array");
    assert!(!checks.is_empty());
    for check in checks {
        let check = check.as_object().expect("object");
        for key in [
            "name",
            "epsilon",
            "mass",
            "computed",
            "expected",
            "paper_printed",
            "abs_error_estimate",
            "passed",
        ] {
            assert!(check.contains_key(key), "check missing key {key}");
        }
    }

    // the delta normalization row appears once per default grid point,
    // each equal to -4pi
    let four_pi = 4.0 * std::f64::consts::PI;
    let norm_rows: Vec<_> = checks
        .iter()
        .filter(|c| c["name"] == "delta_normalization")
        .collect();
    assert_eq!(norm_rows.len(), 6);
    for row in norm_rows {
        let v = row["computed"].as_f64().unwrap();
        assert!((v + four_pi).abs() < 1e-7, "got {v}");
        assert!(row["passed"].as_bool().unwrap());
    }

    let sweeps = report["sweeps"].as_array().expect("array");
    assert_eq!(sweeps.len(), 1);
    for key in ["test_function", "rows", "fitted_order", "passed"] {
        assert!(sweeps[0].as_object().unwrap().contains_key(key));
    }
}

#[test]
fn corrupted_expected_constant_flips_exit_to_one() {
    let out = kgdist(&[
        "verify",
        "--format",
        "json",
        "--override-expected",
        "delta_normalization=0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // the report is still written, with the failing rows marked
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["verdict"], "fail");
}

#[test]
fn negative_mass_exits_two_with_diagnostic() {
    let out = kgdist(&["verify", "--mass", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("mass must be positive"), "stderr: {err}");
}

#[test]
fn identical_runs_are_byte_identical() {
    for fmt in ["json", "csv", "table"] {
        let a = kgdist(&["verify", "--format", fmt]);
        let b = kgdist(&["verify", "--format", fmt]);
        assert_eq!(a.stdout, b.stdout, "format {fmt} not deterministic");
    }
}

#[test]
fn degenerate_grid_still_runs_identity_checks() {
    let out = kgdist(&["verify", "--eps", "0.5", "--format", "json"]);
    // the single-point sweep cannot meet the limit tolerance, so exit is 1,
    // but every identity check must still have run and passed
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 5);
    assert!(checks.iter().all(|c| c["passed"].as_bool().unwrap()));
    assert!(report["sweeps"][0]["fitted_order"].is_null());
}

#[test]
fn sweep_csv_structure() {
    let out = kgdist(&["sweep", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // header + 6 grid rows + footer
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0], "epsilon,pairing_value,target,deviation,abs_error_estimate");
    assert!(lines[7].starts_with("fitted_order,"));
    // final deviation under the limit tolerance 1e-4 * 4pi
    let last: Vec<&str> = lines[6].split(',').collect();
    let deviation: f64 = last[3].parse().unwrap();
    assert!(deviation < 1e-4 * 4.0 * std::f64::consts::PI);
}

#[test]
fn dimreg_table_and_pole() {
    let out = kgdist(&["dimreg"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("-1.0000000000000009e0") || text.contains("-1.0000000000000000e0"));
    assert!(text.contains("fitted 1/lambda order: 1.000"));

    let out = kgdist(&["dimreg", "--mass", "2"]);
    assert!(stdout(&out).contains("-2.000000000000"));

    let out = kgdist(&["dimreg", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pole at 1 - D/2 = 0"));
}

#[test]
fn eval_values_and_domain_errors() {
    let out = kgdist(&["eval", "yukawa", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - (-1.0f64).exp()).abs() < 1e-15);

    let out = kgdist(&["eval", "phi-dist", "0", "--eps", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("-1.0000000000000000e0"));
    assert!(text.contains("7.8788456080286"));

    let out = kgdist(&["eval", "yukawa", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular at r = 0"));
}

#[test]
fn config_file_merging_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "mass = 2\neps = 0.2, 0.1, 0.05\ntest_fn = poly_gaussian\n").unwrap();
    let path = path.to_str().unwrap();

    let out = kgdist(&["sweep", "--config", path, "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["config"]["mass"], 2.0);
    assert_eq!(report["config"]["test_function"], "poly_gaussian");
    assert_eq!(report["config"]["eps_grid"].as_array().unwrap().len(), 3);

    // flags win over the file
    let out = kgdist(&["sweep", "--config", path, "--mass", "1.5", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["config"]["mass"], 1.5);

    // unknown keys are named in the diagnostic
    std::fs::write(dir.path().join("bad.cfg"), "masss = 2\n").unwrap();
    let out = kgdist(&["verify", "--config", dir.path().join("bad.cfg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown config key `masss`"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = kgdist(&["sweep", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).expect("valid json");
    assert_eq!(report["verdict"], "pass");
}
