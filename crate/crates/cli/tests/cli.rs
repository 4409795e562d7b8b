use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn truncgr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_truncgr")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn dims_for_gr_2_4() {
    let out = truncgr(&["dims", "--n", "4", "--d", "2", "--r", "*"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let dims: Vec<&str> = report["result"]["rows"].as_array().unwrap().iter().map(|r| r["dim"].as_str().unwrap()).collect();
    assert_eq!(dims, ["1", "5", "6"]);
    assert_eq!(report["version"], truncgr_version());
    assert_eq!(report["config"]["n"], 4);
}

fn truncgr_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

#[test]
fn dims_ranges_and_errors() {
    let empty = truncgr(&["dims", "--n", "6..5", "--format", "tsv"]);
    assert_eq!(code(&empty), 0);
    let text = String::from_utf8(empty.stdout).unwrap();
    assert_eq!(text.lines().last(), Some("n\td\tr\tdim\tenumerated"));
    assert_eq!(code(&truncgr(&["dims", "--n", "4", "--d", "3"])), 2);
    assert_eq!(code(&truncgr(&["dims", "--n", "4", "--d", "2", "--r", "3"])), 2);
    assert_eq!(code(&truncgr(&["dims"])), 2);
    // ranges skip inadmissible combinations
    let out = truncgr(&["dims", "--n", "2..5", "--d", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn resolution_of_s2_in_gr_3_6() {
    let out = truncgr(&["resolution", "--n", "6", "--d", "3", "--r", "2"]);
    assert_eq!(code(&out), 0);
    let result = &json(&out)["result"];
    assert_eq!(result["term_count"], 6);
    assert_eq!(result["layers"].as_array().unwrap().len(), 5);
    assert_eq!(result["euler_matches_truncated_dim"], true);
    let divisor = json(&truncgr(&["resolution", "--n", "5", "--d", "2", "--r", "1"]));
    assert_eq!(divisor["result"]["layers"].as_array().unwrap().len(), 2);
    assert_eq!(code(&truncgr(&["resolution", "--n", "6", "--d", "3", "--r", "4"])), 2);
}

#[test]
fn bwb_and_euler() {
    let out = truncgr(&["bwb", "--n", "4", "--d", "2", "--a", "1,1", "--b", "0,0"]);
    assert_eq!(code(&out), 0);
    let coh = &json(&out)["result"]["cohomology"];
    assert_eq!(coh["degree"], 0);
    assert_eq!(coh["dimension"], "6");
    let out = truncgr(&["bwb", "--n", "2", "--d", "1", "--a", "-1", "--b", "0"]);
    assert_eq!(json(&out)["result"]["cohomology"]["status"], "vanishes");
    assert_eq!(code(&truncgr(&["bwb", "--n", "4", "--d", "2", "--a", "1", "--b", "0,0"])), 2);
    let out = truncgr(&["euler", "--n", "6", "--d", "3", "--r", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["identity"]["dimension"], "10");
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = truncgr(&["fiber", "--m", "2", "--r-list", "2", "--n", "4", "--d", "2", "--seed", "4,9", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let report: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(report["config"]["seeds"], serde_json::json!([4, 9]));
    // no stray temporary files are left next to the output
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn repeated_and_comma_separated_seeds_agree() {
    let one = truncgr(&["smooth", "--n", "4", "--d", "2", "--samples", "4", "--seed", "1", "--seed", "2"]);
    let two = truncgr(&["smooth", "--n", "4", "--d", "2", "--samples", "4", "--seed", "1,2"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, two.stdout);
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    write(&cfg, "# dims of Gr(2,5)\nn = 5\nd = 2\nformat = tsv\n");
    let out = truncgr(&["dims", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("5\t2\t2\t10\t10"));
    let out = truncgr(&["dims", "--config", cfg.to_str().unwrap(), "--n", "4", "--format", "json"]);
    assert_eq!(json(&out)["config"]["n"], 4);

    let bad = dir.path().join("bad.cfg");
    for text in ["unknown = 3\n", "n = four\n", "no separator\n", "config = other.cfg\n"] {
        write(&bad, text);
        assert_eq!(code(&truncgr(&["dims", "--config", bad.to_str().unwrap()])), 2, "{text:?}");
    }
    assert_eq!(code(&truncgr(&["dims", "--config", "/nonexistent/x.cfg"])), 2);
}

#[test]
fn divergence_and_usage_exit_codes() {
    let out = truncgr(&["ideal", "--n", "4", "--d", "2", "--budget", "0"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["status"], "diverged");
    assert_eq!(code(&truncgr(&["ideal", "--n", "5", "--d", "2"])), 2);
    assert_eq!(code(&truncgr(&["frobnicate"])), 2);
    assert_eq!(code(&truncgr(&["dims", "--format", "xml", "--n", "4"])), 2);
    assert_eq!(code(&truncgr(&["fiber", "--m", "2", "--r-list", "3,2"])), 2);
}

#[test]
fn ideal_modes() {
    let out = truncgr(&["ideal", "--n", "4", "--d", "2", "--samples", "20"]);
    assert_eq!(code(&out), 0);
    let result = &json(&out)["result"];
    assert_eq!(result["relations"].as_array().unwrap().len(), 1);
    assert_eq!(result["violations"], 0);
    let out = truncgr(&["ideal", "--mode", "vanishing", "--n", "4", "--d", "2", "--r", "2", "--samples", "40"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["euler_characteristic"], "5");
}

#[test]
fn verify_reports_every_check() {
    let out = truncgr(&["verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    let checks = report["result"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 11);
    assert!(checks.iter().all(|c| c["status"] == "pass"));

    let out = truncgr(&["verify", "--budget", "0"]);
    assert_eq!(code(&out), 3);
    let report = json(&out);
    let diverged: Vec<&Value> = report["result"]["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "diverged").collect();
    assert!(!diverged.is_empty());
    assert!(report["result"]["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}
