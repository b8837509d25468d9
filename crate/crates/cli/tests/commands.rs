use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn solidus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solidus")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn example_map() -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "iota_prime_iota.json"].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn orbit_of_a_coordinate_line_point() {
    let out = solidus(&["orbits", "--group", "G_48_50", "--point", "0,0,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    // Points with two zero coordinates and the other two equal up to sign:
    // six coordinate pairs times two signs.
    assert_eq!(v["length"], 12);
    assert_eq!(v["points"].as_array().unwrap().len(), 12);
    assert_eq!(v["stabilizer_order"], 48 / 12);
}

#[test]
fn quartic_invariants_suite() {
    let out = solidus(&["verify", "quartic-invariants"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let dim = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "quartic-invariants/h-hat-dimension")
        .expect("dimension check present");
    assert_eq!(dim["status"], "pass");
    assert_eq!(dim["detail"], "dimension 5");
}

#[test]
fn decompose_composite_of_two_involutions() {
    let out = solidus(&["decompose", "--map", &example_map(), "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["degree"], 9);
    assert_eq!(v["word"], serde_json::json!(["iota", "iota_prime"]));
    assert_eq!(v["round_trip"], true);
}

#[test]
fn decompose_rejects_a_missing_file() {
    let out = solidus(&["decompose", "--map", "/nonexistent/map.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(solidus(&["--bogus"]).status.code(), Some(2));
    assert_eq!(solidus(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(solidus(&["group", "G_7_1"]).status.code(), Some(2));
}

#[test]
fn conductor_must_divide_24() {
    let out = Command::new(env!("CARGO_BIN_EXE_solidus"))
        .env("SOLIDUS_CONDUCTOR", "5")
        .args(["group", "G_48_50"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_solidus"))
        .env("SOLIDUS_CONDUCTOR", "8")
        .args(["orbits", "--group", "G_48_50", "--point", "1,0,0,0"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["length"], 4);
}

#[test]
fn runs_are_reproducible() {
    let args = ["--seed", "7", "verify", "quartic-net"];
    let a = solidus(&args);
    let b = solidus(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catalog_lists_groups_and_points() {
    let v = json(&solidus(&["catalog", "list"]));
    let keys: Vec<&str> = v.as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    assert_eq!(keys.iter().filter(|k| k.starts_with("group:")).count(), 18);
    assert!(keys.contains(&"group:G_192_185"));
}

#[test]
fn net_rows_all_pass() {
    let out = solidus(&["net", "--table1"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["table"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn diagram_with_few_samples() {
    let out = solidus(&["verify", "diagram", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn markdown_report() {
    let out = solidus(&["--format", "md", "verify", "line-intersections"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| `line-intersections/"));
}
