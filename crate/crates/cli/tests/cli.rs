use std::fs;
use std::process::{Command, Output};

fn solenoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solenoid")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn morita_levels_pass() {
    let out = solenoid(&["verify", "--suite", "morita", "-p", "2", "--levels", "0..3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "morita");
    assert_eq!(v["config_echo"]["levels"], serde_json::json!([0, 3]));
    assert_eq!(v["summary"]["all_passed"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"j=3"));
    for c in v["checks"].as_array().unwrap() {
        assert!(c.get("identity").is_some() && c.get("verdict").is_some() && c.get("discrepancy").is_some());
    }
}

#[test]
fn empty_sweep_is_vacuous_pass() {
    let out = solenoid(&["verify", "--suite", "cocycle", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"].as_array().unwrap().len(), 0);
    assert_eq!(v["summary"]["total"], 0);
}

#[test]
fn poisson_within_tolerance() {
    let out = solenoid(&["verify", "--suite", "poisson", "-p", "2", "-j", "1", "--theta", "0.5477"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["summary"]["max_numeric_discrepancy"].as_f64().unwrap() < 1e-8);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "--suite", "algebra", "-p", "3", "--samples", "25", "--seed", "11"];
    let a = solenoid(&args);
    let b = solenoid(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failures_exit_with_one() {
    let out = solenoid(&["verify", "--suite", "poisson", "--samples", "2", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["summary"]["all_passed"], false);
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(solenoid(&["verify", "--suite", "morita", "-p", "6"]).status.code(), Some(2));
    assert_eq!(solenoid(&["verify", "--suite", "morita", "--theta", "1.2"]).status.code(), Some(2));
    assert_eq!(solenoid(&["verify", "--suite", "morita", "--theta", "0"]).status.code(), Some(2));
    assert_eq!(solenoid(&["verify", "--suite", "morita", "--radius", "-1"]).status.code(), Some(2));
    assert_eq!(solenoid(&["verify", "--suite", "phi", "--fourier-range", "0"]).status.code(), Some(2));
    assert_eq!(solenoid(&["verify", "--suite", "nosuch"]).status.code(), Some(2));
    assert_eq!(solenoid(&["verify", "-p", "2"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "suite=morita\nthis line has no equals sign\n").unwrap();
    let out = solenoid(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    let out_path = dir.path().join("report.csv");
    fs::write(
        &conf,
        format!("# generators at two primes\nsuite = generators\np = 3\nlevels = 0..1\nformat = csv\nout = {}\n", out_path.display()),
    )
    .unwrap();
    let out = solenoid(&["verify", "--config", conf.to_str().unwrap(), "-p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(&out_path).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("suite,name,identity,verdict"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn table_lists_lattice_points() {
    let out = solenoid(&["table", "-p", "2", "-j", "1", "--m1", "0", "--m2", "1", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        let r1 = e["r1"].as_str().unwrap();
        assert!(r1.ends_with("/2") || !r1.contains('/'), "{r1}");
        assert_eq!(e["complex_value"].as_array().unwrap().len(), 2);
    }
}
