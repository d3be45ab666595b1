//! End-to-end checks of the command-line surface: flag handling, config
//! files and precedence, artifact writing, and the exit-code contract
//! (0 pass, 1 hard violation, 2 configuration error).

use std::fs;
use std::process::Command;

use mdrlab::harness::CampaignReport;

fn mdrlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mdrlab"))
}

#[test]
fn sweep_run_writes_artifacts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let json = dir.path().join("report.json");
    let output = mdrlab()
        .args([
            "fig2",
            "--grid",
            "9",
            "--out-csv",
            csv.to_str().unwrap(),
            "--out-json",
            json.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{output:?}");

    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("pass=true"), "{stdout}");

    let rows = fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("theta3,theta_p,E_A2A3,E_B1B2,sum,bound_h,bound_o\n"));
    assert_eq!(rows.lines().count(), 10); // header + 9 rows

    let report: CampaignReport = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.mode, "fig2");
    assert!(report.pass);
}

#[test]
fn chsh_csv_appends_the_composite_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let status = mdrlab()
        .args(["chsh", "--grid", "5", "--out-csv", csv.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let rows = fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("theta3,theta_p,E_A2A3,E_B1B2,sum,bound_h,bound_o,B12,B23,total\n"));
}

#[test]
fn reruns_are_byte_identical_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let mut artifacts = Vec::new();
    for k in 0..2 {
        let json = dir.path().join(format!("r{k}.json"));
        let status = mdrlab()
            .args([
                "fuzz-eq15",
                "--seed",
                "31",
                "--trials",
                "40",
                "--out-json",
                json.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        artifacts.push(fs::read(&json).unwrap());
    }
    assert_eq!(artifacts[0], artifacts[1]);
}

#[test]
fn config_file_fields_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, "{\"seed\": 5, \"trials\": 7}").unwrap();
    let json = dir.path().join("report.json");
    let status = mdrlab()
        .args([
            "fuzz-eq15",
            "--config",
            config.to_str().unwrap(),
            "--trials",
            "9",
            "--out-json",
            json.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: CampaignReport = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.seed, 5); // from file
    assert_eq!(report.trials, 9); // flag wins
}

#[test]
fn hard_violations_exit_one() {
    // an absurdly tight identity tolerance forces violations
    let output = mdrlab()
        .args(["fuzz-eq15", "--trials", "5", "--tol-identity", "1e-18"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("pass=false"), "{stdout}");
}

#[test]
fn configuration_errors_exit_two() {
    // unparseable mode
    let status = mdrlab().args(["warp"]).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // invalid field value
    let status = mdrlab().args(["fig2", "--grid", "1"]).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // missing config file
    let status = mdrlab()
        .args(["fig2", "--config", "/nonexistent/config.json"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    // unknown field in the config file
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    fs::write(&config, "{\"sead\": 4}").unwrap();
    let status = mdrlab()
        .args(["fig2", "--config", config.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn product_form_findings_do_not_change_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let status = mdrlab()
        .args([
            "fuzz-thm2",
            "--trials",
            "10",
            "--grid",
            "5",
            "--out-json",
            json.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: CampaignReport = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert!(report.heisenberg_findings().count() > 0);
    assert!(report.pass);
}
