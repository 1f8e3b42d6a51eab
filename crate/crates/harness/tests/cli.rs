use std::process::{Command, Output};

fn modtime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modtime")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn passing_suite_exits_zero_with_csv_header() {
    let out = modtime(&["verify", "weyl", "--format", "csv"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("case,anchor,param,residual,tol,pass"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn thermal_oscillator_run_meets_its_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("osc.json");
    let out = modtime(&["verify", "oscillator", "--d", "12", "--beta", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let thermal: Vec<&serde_json::Value> =
        report["cases"].as_array().unwrap().iter().filter(|c| c["anchor"] == "Thm thermal-L" && c["case"].as_str().unwrap().contains("-b1-")).collect();
    assert_eq!(thermal.len(), 10);
    for c in thermal {
        assert!(c["residual"].as_f64().unwrap() <= 1e-8, "{c}");
    }
    assert!(report["stamp"]["wall_time_s"].is_number());
}

#[test]
fn impossible_tolerance_exits_one() {
    let out = modtime(&["verify", "povm", "--only", "povm/naimark", "--tol", "1e-30"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "nonsense"][..],
        &["verify", "povm", "--format", "xml"],
        &["verify", "povm", "--tol", "-1"],
        &["verify", "povm", "--only", "nothing/"],
        &["study", "poisson-kernel", "--sizes", ""],
        &["frobnicate"],
    ] {
        assert_eq!(code(&modtime(args)), 2, "{args:?}");
    }
}

#[test]
fn study_reports_single_size_as_not_applicable() {
    let out = modtime(&["study", "poisson-kernel", "--sizes", "128"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,size,error,monotone"));
    assert!(lines.next().unwrap().ends_with(",n/a"));
}

#[test]
fn study_sweep_is_decreasing() {
    let out = modtime(&["study", "poisson-kernel", "--sizes", "128,256,512,1024", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let table: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(table["monotone"], "decreasing");
    assert_eq!(table["rows"].as_array().unwrap().len(), 4);
}
