use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conjforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

#[test]
fn score_alternating_seven() {
    let out = run(&["score", "--alternating", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("k: 9"), "{text}");
    assert!(text.contains("ratio: 0.796"), "{text}");
}

#[test]
fn score_transposition() {
    let out = run(&["score", "--generators", "deg=2 (1,2)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order: 2\n"), "{text}");
    assert!(text.contains("k: 2\n"), "{text}");
    assert!(text.contains("ratio: 2.0\n"), "{text}");
}

#[test]
fn score_json_is_parseable() {
    let out = run(&["score", "--symmetric", "5", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["order"], "120");
    assert_eq!(value["k"], "7");
}

#[test]
fn score_needs_exactly_one_group() {
    assert!(!run(&["score"]).status.success());
    assert!(!run(&["score", "--alternating", "5", "--symmetric", "5"]).status.success());
}

#[test]
fn score_trivial_group_is_an_error() {
    let out = run(&["score", "--generators", "deg=3 ()"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn verify_default_range_holds() {
    let out = run(&["verify"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("minimum at n = 7"));
}

#[test]
fn verify_json_only() {
    let out = run(&["verify", "--max-n", "40", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["holds"], true);
    assert_eq!(value["minimum_at"], 7);
}

#[test]
fn verify_rejects_short_range() {
    assert!(!run(&["verify", "--max-n", "5"]).status.success());
}

#[test]
fn unknown_subcommand_fails() {
    assert!(!run(&["frobnicate"]).status.success());
    assert!(!run(&[]).status.success());
}

#[test]
fn table1_csv() {
    let out = run(&["table1", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,log2_order,ratio");
    assert_eq!(lines.len(), 10);
    assert!(lines[5].starts_with("7,9,"));
}

#[test]
fn partitions_csv() {
    let out = run(&["partitions", "--max-n", "10", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,p,alpha,beta,maroti_bound,t"));
    let row10 = text.lines().find(|l| l.starts_with("10,")).unwrap();
    assert!(row10.starts_with("10,42,"), "{row10}");
}

#[test]
fn group_info_mathieu() {
    let out = run(&[
        "group-info",
        "--generators",
        "deg=11 (1,2,3,4,5,6,7,8,9,10,11); (3,7,11,8)(4,10,5,6)",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order: 7920"), "{text}");
    assert!(text.contains("k: 10"), "{text}");
    assert!(text.contains("abelian: false"), "{text}");
}

#[test]
fn element_cap_from_env() {
    let out = bin()
        .args(["group-info", "--generators", "deg=6 (1,2); (1,2,3,4,5,6)"])
        .env("CONJFORGE_ELEMENT_CAP", "100")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("k: not computed"));

    let out = bin()
        .args(["group-info", "--generators", "deg=3 (1,2)"])
        .env("CONJFORGE_ELEMENT_CAP", "lots")
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn bad_generators_fail() {
    assert!(!run(&["group-info", "--generators", "deg=3 (1,4)"]).status.success());
    assert!(!run(&["group-info", "--generators", "(1,2"]).status.success());
}

#[test]
fn search_writes_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.jsonl");
    let report = dir.path().join("report.json");
    let out = bin()
        .args(["search", "--workers", "2", "--config"])
        .arg(config("seeded_alternating.json"))
        .arg("--out")
        .arg(&log)
        .arg("--report")
        .arg(&report)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&log).unwrap();
    let records: Vec<serde_json::Value> =
        text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 11);
    for (g, rec) in records.iter().enumerate() {
        assert_eq!(rec["generation"], g);
    }
    let full: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(full.is_object());
}

#[test]
fn search_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"population_size": 4, "elite_count": 9}"#).unwrap();
    let out = bin().args(["search", "--config"]).arg(&path).output().unwrap();
    assert!(!out.status.success());
    assert!(!run(&["search", "--config", "/nonexistent/config.json"]).status.success());
}
