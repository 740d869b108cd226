//! End-to-end runs of the `prismatoid` binary: reports, files and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prismatoid")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not a JSON report ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("prismatoid-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn width_of_gallery_prismatoid() {
    let out = run(&["width", "--gallery", "q40", "--expect-width", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["command"], "width");
    assert_eq!(r["n"], 40);
    assert_eq!(r["dim"], 5);
    assert_eq!(r["width"], 6);
    assert_eq!(r["excesses"]["prismatoid_excess"], "1/35");
    assert!(r["checks"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn wrong_expected_width_is_a_failed_check() {
    let out = run(&["width", "--gallery", "q40", "--expect-width", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_gallery_is_a_usage_error() {
    let out = run(&["width", "--gallery", "q99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_vfile_is_a_usage_error() {
    let dir = scratch("parse");
    let path = dir.join("bad.ext");
    std::fs::write(&path, "bad\nV-representation\nbegin\n2 3 rational\n1 0 0\n1 x 1\nend\n").unwrap();
    let out = run(&["hull", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn hull_of_exported_gallery_polytope() {
    let dir = scratch("hull");
    let v = dir.join("q20.ext");
    let h = dir.join("q20.ine");
    let out = run(&["gallery", "q20", "--out", v.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["hull", "--in", v.to_str().unwrap(), "--out", h.to_str().unwrap(), "--validate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["n"], 25);
    assert_eq!(r["facets"], 244);
    let text = std::fs::read_to_string(&h).unwrap();
    assert!(text.contains("H-representation"));
    assert!(text.contains("244 6 integer") || text.contains("244 6 rational"));
}

#[test]
fn report_can_go_to_a_file() {
    let dir = scratch("report");
    let path = dir.join("report.json");
    let out = run(&["--report", path.to_str().unwrap(), "width", "--gallery", "q20"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["width"], 6);
}

#[test]
fn oracle_reports_the_eight_node_minimum() {
    let out = run(&["oracle"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["command"], "oracle");
    assert!(r["checks"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn twisted_two_copies_verifies() {
    let out = run(&["twisted", "--d", "3", "--q", "2", "--two-copies", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["width"], 5);
    assert!(r["checks"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn pattern_of_gallery_is_sixteen_arrow() {
    let out = run(&["pattern", "--gallery", "q40", "--transversality"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert!(r["checks"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn render_writes_an_svg() {
    let dir = scratch("render");
    let path = dir.join("q20.svg");
    let out = run(&["render", "--gallery", "q20", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn one_automatic_tower_step() {
    let dir = scratch("tower");
    let out = run(&["tower", "--steps", "1", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["dim"], 6);
    assert_eq!(r["width"], 7);
}
