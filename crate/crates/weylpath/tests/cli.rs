use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use weylpath::format::{csv_to_bins, PathDoc};
use weylpath::core::{Path, Rational};

fn weylpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylpath")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    weylpath(args).status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("weylpath-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const A2_PATH: &str = r#"{"type": "A2", "times": ["0", "1/3", "1"], "values": [["0", "0"], ["-1", "2/7"], ["1/2", "-2"]]}"#;

#[test]
fn braid_check_for_g2_exits_zero() {
    let out = weylpath(&["verify", "braid", "--type", "G2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn identity_transform_roundtrips_exactly() {
    let input = write("in.json", A2_PATH);
    let out = scratch("id.json").display().to_string();
    assert_eq!(code(&["transform", "--in", &input, "--word", "", "--out", &out]), 0);
    let original: Path<Rational> = serde_json::from_str::<PathDoc>(A2_PATH).unwrap().to_path().unwrap();
    let back: Path<Rational> = serde_json::from_str::<PathDoc>(&fs::read_to_string(&out).unwrap()).unwrap().to_path().unwrap();
    assert_eq!(back, original);
}

#[test]
fn w0_transform_is_idempotent_through_files() {
    let input = write("w0in.json", A2_PATH);
    let once = scratch("once.json").display().to_string();
    let twice = scratch("twice.json").display().to_string();
    assert_eq!(code(&["transform", "--in", &input, "--out", &once]), 0);
    assert_eq!(code(&["transform", "--in", &once, "--out", &twice]), 0);
    assert_eq!(fs::read_to_string(&once).unwrap(), fs::read_to_string(&twice).unwrap());
    let dual = scratch("dual.json").display().to_string();
    assert_eq!(code(&["dualize", "--in", &once, "--out", &dual]), 0);
}

#[test]
fn failures_have_distinct_exit_codes() {
    let missing = scratch("missing.json").display().to_string();
    assert_eq!(code(&["transform", "--in", &missing]), 6);
    let bad = write("bad.json", r#"{"type": "A2", "times": ["0", "x"], "values": [["0", "0"], ["1", "1"]]}"#);
    assert_eq!(code(&["transform", "--in", &bad]), 3);
    assert_eq!(code(&["module", "--type", "E8", "--omega", "1"]), 4);
    assert_eq!(code(&["module", "--type", "I2(5)", "--omega", "1,0"]), 4);
    assert_eq!(code(&["verify", "markov", "--n", "13"]), 5);
    assert_eq!(code(&["gauss-check", "--type", "A2", "--tolerance", "1e-15"]), 1);
    assert_eq!(code(&["module", "--type", "A2", "--omega", "1,-1"]), 2);
    assert_eq!(code(&["verify", "nonsense"]), 2);
}

#[test]
fn thm510_alias_runs_the_markov_check() {
    assert_eq!(code(&["verify", "thm510", "--type", "A2", "--omega", "1,0", "--n", "4"]), 0);
}

#[test]
fn module_and_tensor_artifacts() {
    let out = scratch("module.json").display().to_string();
    assert_eq!(code(&["module", "--type", "B2", "--omega", "1,1", "--out", &out]), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["dimension"], 16);
    assert_eq!(v["paths"].as_array().unwrap().len(), 16);
    let t = weylpath(&["tensor", "--type", "A2", "--lambda", "1,1", "--mu", "1,1"]);
    assert_eq!(t.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&t.stdout).contains("total dimension 64"));
}

#[test]
fn simulation_reports_are_reproducible() {
    let (csv, a, b) = (scratch("sim.csv"), scratch("a.json"), scratch("b.json"));
    let args = |json: &PathBuf| {
        vec!["simulate".to_string(), "--type".into(), "A2".into(), "--omega".into(), "1,0".into(), "--steps".into(), "300".into(), "--samples".into(), "1000".into(), "--seed".into(), "7".into(), "--out".into(), csv.display().to_string(), "--json".into(), json.display().to_string()]
    };
    let run = |json: &PathBuf| {
        let v = args(json);
        code(&v.iter().map(String::as_str).collect::<Vec<_>>())
    };
    assert_eq!(run(&a), 0);
    assert_eq!(run(&b), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let rows = csv_to_bins(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 50);
    assert_eq!(rows.iter().map(|r| r.observed).sum::<u64>(), 1000);
}

#[test]
fn quick_suite_passes_within_five_minutes() {
    let start = Instant::now();
    let out = weylpath(&["verify", "all", "--quick"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 14, "{text}");
    assert!(start.elapsed().as_secs() < 300);
}
