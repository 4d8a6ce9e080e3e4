//! End-to-end runs of the `syllogist` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syllogist"))
        .env_remove("SYLLOGIST_LEXICON")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn infer_pattern_one() {
    let out = run(&["infer", &data("pattern1.syl")]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("[0.51, 1] students are single\n"));
}

#[test]
fn infer_chaining_with_lexicon_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_syllogist"))
        .env("SYLLOGIST_LEXICON", data("lexicon.json"))
        .args(["--ascii", "infer", &data("chaining.syl"), "--assume-inclusion"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), ">= most⊗most American are expensive\n");
}

#[test]
fn infer_pattern_three() {
    let v = json(&["infer", &data("pattern3_particular.syl")]);
    assert_eq!(v["conclusion"], "[0, 0.1] \"people who have children\" are \"young and single\"");
    assert_eq!(v["version"], "particular");
}

#[test]
fn exit_codes() {
    let lexicon = data("lexicon.json");
    // unverified chaining constraint: semantic error
    let out = run(&["--lexicon", &lexicon, "infer", &data("chaining.syl")]);
    assert_eq!(out.status.code(), Some(2));
    // unknown quantifier without the lexicon: parse error
    let out = run(&["infer", &data("chaining.syl")]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["infer", &data("pattern1.syl"), "--pattern", "mc"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["check-mood", "XYZ-9"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["infer", "/nonexistent/file.syl"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["--format", "json", "--lexicon", &lexicon, "infer", &data("chaining.syl")]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn check_mood_verdicts() {
    let out = run(&["check-mood", "EAO-3", "--max", "8"]);
    assert!(stdout(&out).starts_with("EAO-3: valid"));
    let v = json(&["check-mood", "IEO-1"]);
    assert_eq!(v["valid"], false);
    assert!(v["counterexample"].is_string());
}

#[test]
fn oracle_range_is_exact() {
    let v = json(&["oracle-range", &data("range.json")]);
    assert_eq!(v["min"], "0");
    assert_eq!(v["max"], "1/10");
}

#[test]
fn json_output_is_deterministic() {
    for args in [vec!["compat", "--tables"], vec!["infer", &data("pattern1.syl")]] {
        let mut full = vec!["--format", "json"];
        full.extend(args.iter().map(|s| &**s));
        let a = stdout(&run(&full));
        let b = stdout(&run(&full));
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }
}

#[test]
fn compat_text_and_json_agree() {
    let text = stdout(&run(&["compat", "--tables"]));
    let v = json(&["compat"]);
    for (key, label) in [("pattern_one", "Pattern I"), ("mc", "MC"), ("mpr", "MPR")] {
        let cells: String = v[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| format!(" {:<5}", if e["compatible"] == true { "Yes" } else { "No" }))
            .collect();
        assert!(text.contains(&format!("{label:<10}{cells}")), "{label}: {cells}");
    }
}

#[test]
fn eval_and_lexicon_validate() {
    let lexicon = data("lexicon.json");
    let out = run(&["--lexicon", &lexicon, "eval", &data("statements.txt"), "--data", &data("cars.json")]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().count(), 3);
    let v = json(&["lexicon-validate", &lexicon]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);
    let out = run(&["lexicon-validate", &data("cars.json")]);
    assert_eq!(out.status.code(), Some(1));
}
