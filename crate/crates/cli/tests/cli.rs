use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn fanoball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanoball")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("fanoball-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn passing_suite_exits_zero() {
    let out = fanoball(&["verify", "chern"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["suite"], "chern");
    assert_eq!(report["summary"]["passed"], report["summary"]["total"]);
    let ids: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"log_chern.S"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fanoball(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(fanoball(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fanoball(&["lattice", "member", "1 2 3"]).status.code(), Some(2));
    assert_eq!(
        fanoball(&["dm", "periods", "--mu", "1,1/3,1/3,1/6,1/6", "--points", "0,1,2,3,4"]).status.code(),
        Some(2)
    );
}

#[test]
fn bad_arrangement_reports_line() {
    let path = temp_file("bad.arr", "rank 1\ngram\n1\ncanonical -3\nbranch x weight 3\n");
    let out = fanoball(&["namba", "classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5"), "{err}");
    std::fs::remove_file(path).ok();
}

#[test]
fn empty_and_missing_files_exit_two() {
    let path = temp_file("empty.arr", "");
    assert_eq!(fanoball(&["namba", "classify", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_file(path).ok();
    assert_eq!(fanoball(&["namba", "classify", "/nonexistent/none.arr"]).status.code(), Some(2));
}

#[test]
fn classify_bundled_arrangements() {
    let out = fanoball(&["namba", "classify", "p2-quadrilateral.arr"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["branches"].as_array().unwrap().len(), 6);
    assert_eq!(v["cover_group"], "(Z/3)^5");

    let out = fanoball(&["namba", "classify", "dp5-ten-curves.arr"]);
    let v = json(&out);
    assert_eq!(v["rank"], 5);
    assert_eq!(v["branches"].as_array().unwrap().len(), 10);
    assert_eq!(v["gram"][1][1], -1);
}

#[test]
fn json_and_markdown_agree_on_ids() {
    let report = json(&fanoball(&["verify", "all"]));
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 40);
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), ids.len(), "ids are unique");

    let md = String::from_utf8(fanoball(&["verify", "all", "--format", "md"]).stdout).unwrap();
    let md_ids: Vec<&str> = md.lines().filter(|l| l.starts_with("| `")).filter_map(|l| l.split('`').nth(1)).collect();
    assert_eq!(md_ids, ids);
}

#[test]
fn namba_report_names_the_p2_group() {
    let report = json(&fanoball(&["verify", "namba"]));
    let check = report["checks"].as_array().unwrap().iter().find(|c| c["id"] == "cover_group.p2").unwrap();
    assert_eq!(check["computed"], "(Z/3)^5");
    assert_eq!(check["provenance"], "paper");
}

#[test]
fn lattice_queries() {
    let v = json(&fanoball(&["lattice", "search", "--height", "1"]));
    assert_eq!(v["count"], 27);
    let v = json(&fanoball(&["lattice", "member", "w 0 0; 0 1 0; 0 0 1"]));
    assert_eq!(v["in_gamma"], true);
    let v = json(&fanoball(&["lattice", "quotient", "--level", "2"]));
    assert_eq!(v["image_order"], 729);
    assert_eq!(v["derived_order"], 1);
}
