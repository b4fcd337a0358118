use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_outer-billiard")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn orbit_dump_has_one_row_per_step() {
    let v = json(&["orbit", "--k", "5", "--steps", "50", "--start", "1/3,2/7", "--format", "json"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 50);
    assert_eq!(rows[0]["step"], 0);
    assert_eq!(rows[0]["point"]["coeffs"].as_array().unwrap().len(), 4);
}

#[test]
fn start_inside_the_polygon_is_a_domain_error() {
    let o = run(&["orbit", "--k", "5", "--steps", "5", "--start", "field:0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inside polygon"));
}

#[test]
fn singular_start_reports_the_step() {
    let o = run(&["orbit", "--k", "4", "--steps", "5", "--start", "0,1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("singular at step 0"), "{}", stderr(&o));
}

#[test]
fn orbit_svg_is_well_formed_with_one_path() {
    let o = run(&["orbit", "--k", "6", "--steps", "30", "--start", "2/5,1/3", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let doc = roxmltree::Document::parse(&text).unwrap();
    let count = |name: &str| doc.descendants().filter(|n| n.has_tag_name(name)).count();
    assert_eq!(count("path"), 1);
    assert_eq!(count("polygon"), 1);
    assert_eq!(count("line"), 6);
    assert_eq!(count("text"), 30);
}

#[test]
fn hexagon_table_matches_the_known_values() {
    let v = json(&["language", "--k", "6", "--nmax", "15", "--format", "json"]);
    let p: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(p, vec![1, 3, 5, 9, 13, 18, 24, 31, 38, 47, 56, 66, 77, 89, 101, 115]);
}

#[test]
fn square_formula_comparison_matches_everywhere() {
    let v = json(&["language", "--k", "4", "--nmax", "40", "--compare-formula", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 41);
    assert!(rows.iter().all(|r| r["matches"] == true));
}

#[test]
fn pentagon_cassaigne_residuals_vanish() {
    let v = json(&["language", "--k", "5", "--nmax", "25", "--format", "json"]);
    assert!(v.as_array().unwrap().iter().all(|r| r["cassaigne_residual"] == 0));
}

#[test]
fn full_verification_passes() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks passed"));
}

#[test]
fn flipped_tangency_fails_the_cell_check() {
    let o = run(&["verify", "--only", "cells", "--flip-tangency", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cells"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn beta_enclosure_contains_1_06() {
    let o = run(&["verify", "--only", "beta", "--eps", "1e-2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["beta", "--eps", "1e-2", "--format", "json"]);
    let lo = v["approx"][0].as_f64().unwrap();
    let hi = v["approx"][1].as_f64().unwrap();
    assert!(lo < 1.06 && 1.06 < hi);
    assert!(hi - lo < 1e-2);
}

#[test]
fn json_dumps_round_trip_byte_for_byte() {
    for args in [
        &["orbit", "--k", "5", "--steps", "12", "--format", "json"][..],
        &["code", "--k", "10", "--steps", "15", "--format", "json"],
        &["families", "--depth", "20", "--format", "json"],
        &["decagon-map", "--format", "json"],
    ] {
        let text = stdout(&run(args));
        let v: Value = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn output_is_deterministic_for_a_seed() {
    let args = ["code", "--k", "5", "--steps", "30", "--seed", "7", "--format", "csv"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let other = ["code", "--k", "5", "--steps", "30", "--seed", "8", "--format", "csv"];
    assert_ne!(stdout(&run(&args)), stdout(&run(&other)));
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(run(&["language", "--k", "7"]).status.code(), Some(2));
    assert_eq!(run(&["language", "--k", "4", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["language", "--k", "4", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--only", "nothing"]).status.code(), Some(2));
    assert_eq!(run(&["beta", "--eps", "0"]).status.code(), Some(2));
}

#[test]
fn families_filter_by_kind() {
    let v = json(&["families", "--depth", "30", "--only", "weak", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["kind"] == "weak"));
    assert!(rows.iter().all(|r| r["length"].as_u64().unwrap() <= 30));
}

#[test]
fn pentagon_bispecials_carry_family_names() {
    let v = json(&["bispecial", "--k", "5", "--nmax", "20", "--only", "strong", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows[0]["word"], "ε");
    assert!(rows.iter().all(|r| r["family"].is_string()));
}

#[test]
fn decagon_codings_agree_with_the_pentagon() {
    let v = json(&["decagon-map", "--steps", "5", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert!(rows.len() >= 15);
    assert!(rows.iter().all(|r| r["matches"] == true));
}

#[test]
fn output_file_receives_the_report() {
    let dir = std::env::temp_dir().join(format!("ob-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let o = run(&["language", "--k", "4", "--nmax", "6", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,p,s,b,cassaigne_residual\n0,1,"));
    std::fs::remove_dir_all(dir).unwrap();
}
