use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn vctest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vctest"))
        .args(args)
        .env_remove("VCTEST_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn dim_reports_dimensions_and_growth() {
    let v = json(&vctest(&["dim", "--class", "intervals:k=1", "--domain", "line:4"]));
    assert_eq!(v["vc"], 2);
    assert_eq!(v["lvc"], 2);
    assert_eq!(v["report"]["growth"], 11);
    assert_eq!(v["report"]["shattering_number"], 11);
}

#[test]
fn distance_is_exact() {
    let v = json(&vctest(&[
        "distance",
        "--class",
        "intervals:k=1",
        "--domain",
        "line:4",
        "--labelling",
        "1010",
    ]));
    assert_eq!(v["distance"], "1/4");
    let weighted = json(&vctest(&[
        "distance",
        "--class",
        "intervals:k=1",
        "--domain",
        "line:4",
        "--labelling",
        "1010",
        "--weights",
        "1,1,3,3",
    ]));
    assert_eq!(weighted["distance"], "1/8");
}

#[test]
fn hardgen_then_test_with_seed_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "chain.txt");
    let gen = vctest(&["hardgen", "--generator", "chain:n=32", "--side", "yes", "--eps", "0.2", "--out", &inst]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    let run = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_vctest"))
            .args(["test", "--class", "monotone:chain=32", "--instance", &inst, "--eps", "0.2"])
            .env("VCTEST_SEED", seed)
            .output()
            .unwrap();
        json(&out)
    };
    let a = run("5");
    assert_eq!(a["accept"], true);
    assert_eq!(a, run("5"));
    let distance = json(&vctest(&["distance", "--class", "monotone:chain=32", "--instance", &inst]));
    assert_eq!(distance["distance"], "0");
}

#[test]
fn sweep_and_emit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = path(dir.path(), "sweep.cfg");
    std::fs::write(&cfg, "# chain sweep\ngenerator = chain:n=16\neps = 0.2\ngrid = 2,8\ntrials = 30\nseed = 1\n").unwrap();
    let csv = path(dir.path(), "out.csv");
    let out = vctest(&["sweep", "--config", &cfg, "--trials", "40", "--out", &csv]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(7) == Some("40")));
    let json_path = path(dir.path(), "out.json");
    assert!(vctest(&["emit", "--input", &csv, "--format", "json", "--out", &json_path]).status.success());
    let back = vctest(&["emit", "--input", &json_path, "--format", "csv"]);
    assert_eq!(String::from_utf8(back.stdout).unwrap(), text);
    let svg = vctest(&["emit", "--input", &csv, "--format", "svg"]);
    assert!(String::from_utf8(svg.stdout).unwrap().contains("<svg"));
}

#[test]
fn verify_exit_codes() {
    let ok = vctest(&["verify", "monotone"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().lines().all(|l| l.starts_with("PASS")));
    let unknown = vctest(&["verify", "no-such-suite"]);
    assert_eq!(unknown.status.code(), Some(2));
    let bad_flag = vctest(&["sweep", "--generator", "chain:n=8", "--eps", "0.2", "--grid", "4,2", "--trials", "30"]);
    assert_eq!(bad_flag.status.code(), Some(2));
}
