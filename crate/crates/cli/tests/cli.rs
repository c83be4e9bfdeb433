use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra")).args(args).env_remove("SPECTRA_THREADS").output().unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn manifest(path: &Path) -> Value {
    let name = format!("{}.manifest.json", path.file_name().unwrap().to_str().unwrap());
    serde_json::from_str(&read(&path.with_file_name(name))).unwrap()
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify"][..],
        &["verify", "--n", "0"],
        &["frobnicate"],
        &["wegner", "--j", "17"],
        &["wegner", "--quad-points", "100"],
        &["density", "--bandwidth", "-1"],
        &["stieltjes", "--egrid", "1:0:0.1"],
        &["stieltjes", "--imz", "-0.1"],
        &["wegner", "--eps-ladder", "0.01,0.1"],
    ] {
        assert_eq!(spectra(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(spectra(&["--help"]).status.code(), Some(0));
    assert_eq!(spectra(&["--version"]).status.code(), Some(0));
}

#[test]
fn verify_writes_report_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.json");
    let status = spectra(&["verify", "--n", "1,4", "--seeds", "3", "--out", out.to_str().unwrap()]).status;
    assert_eq!(status.code(), Some(0));
    let text = read(&out);
    assert!(text.ends_with('\n') && !text.contains('\r'));
    let report: Value = serde_json::from_str(&text).unwrap();
    assert!(report.to_string().contains("toeplitz_stieltjes"));
    let m = manifest(&out);
    assert_eq!(m["command"], "verify");
    assert_eq!(m["exit_code"], 0);
    assert_eq!(m["parameters"]["n"], serde_json::json!([1, 4]));
    assert!(m["versions"]["spectra"].is_string());
}

#[test]
fn impossible_tolerance_exits_one() {
    let status = spectra(&["verify", "--n", "16", "--tol-scale", "1e-12"]).status;
    assert_eq!(status.code(), Some(1));
}

#[test]
fn csv_headers() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.csv");
    let code = spectra(&["stieltjes", "--n", "8", "--samples", "10", "--egrid=-1:1:1", "--imz", "0.1", "--out", s.to_str().unwrap()]);
    assert_eq!(code.status.code(), Some(0));
    let text = read(&s);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "E,imz,re_s,im_s,stderr_re,stderr_im,bound_ok");
    assert_eq!(lines.len(), 4);

    let d = dir.path().join("d.csv");
    let code = spectra(&["density", "--n", "16", "--samples", "10", "--grid-points", "11", "--out", d.to_str().unwrap()]);
    assert_eq!(code.status.code(), Some(0));
    let text = read(&d);
    assert!(text.starts_with("x,density,ci\n"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn stdout_payload_matches_file_payload() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let args = ["moments", "--n", "8", "--samples", "50"];
    let piped = spectra(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    assert_eq!(spectra(&with_out).status.code(), Some(0));
    assert_eq!(piped.stdout, std::fs::read(&out).unwrap());
}

#[test]
fn thread_env_var_is_a_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hw.json");
    let run = Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(["hw", "--n", "8,32", "--seeds", "1", "--out", out.to_str().unwrap()])
        .env("SPECTRA_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(manifest(&out)["threads"], 3);
}

#[test]
fn wegner_scalar_report() {
    let out = spectra(&["wegner", "--scalar"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["fourier_error"].as_f64().unwrap() < 1e-8);
}
