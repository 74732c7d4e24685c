//! End-to-end checks of the binary: output shapes, exit codes, JSON schema.

use std::path::PathBuf;
use std::process::{Command, Output};

fn detgb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detgb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

#[test]
fn gens_lists_the_generators() {
    let out = detgb(&["gens", "--shape", "square:2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("g[1] = x[1][1]*y[1] + x[1][2]*y[2]"));
    assert!(text.contains("g[2] = x[2][1]*y[1] + x[2][2]*y[2]"));
}

#[test]
fn gens_with_k_prints_the_family() {
    let out = detgb(&["gens", "--shape", "square:2", "--k", "1"]);
    let text = stdout(&out);
    assert!(text.contains("S[1] (1) = x[1][1]"));
    assert!(text.contains("x[1][1]*x[2][2]*y[2] - x[1][2]*x[2][1]*y[2]"));

    let out = detgb(&["gens", "--shape", "wide:2", "--k", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["twisted"].as_array().unwrap().len(), 3);
    assert_eq!(v["family"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_passes_and_emits_the_report_schema() {
    let out = detgb(&["verify", "--suite", "gb", "--shape", "square:2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["suite"], "gb");
    assert_eq!(v["shape"], "square");
    assert_eq!(v["n"], 2);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert!(c["name"].as_str().unwrap().starts_with("gb.k="));
        assert!(c["millis"].is_number());
    }
}

#[test]
fn verify_ranges_produce_one_report_per_size() {
    let out = detgb(&["verify", "--suite", "cofactor", "--shape", "square", "--n", "2..3", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["n"], 2);
    assert_eq!(reports[1]["n"], 3);
}

#[test]
fn verify_usage_errors_exit_2() {
    assert_eq!(detgb(&["verify", "--suite", "bogus", "--shape", "square:2"]).status.code(), Some(2));
    assert_eq!(detgb(&["verify", "--suite", "gb", "--shape", "cube:2"]).status.code(), Some(2));
    assert_eq!(detgb(&["verify", "--suite", "regseq", "--shape", "wide:2"]).status.code(), Some(2));
    assert_eq!(detgb(&["verify"]).status.code(), Some(2)); // clap: missing flags
}

#[test]
fn verify_budget_exhaustion_exits_3() {
    let out = detgb(&["verify", "--suite", "all", "--shape", "square:2", "--max-seconds", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn betti_totals_for_each_shape() {
    let out = detgb(&["betti", "--shape", "wide:2"]);
    assert_eq!(stdout(&out).trim(), "1,3,4,2");
    let out = detgb(&["betti", "--shape", "square:3"]);
    assert_eq!(stdout(&out).trim(), "1,3,3,1");
    let out = detgb(&["betti", "--shape", "wide:3"]);
    assert_eq!(stdout(&out).trim(), "1,4,7,7,3");
}

#[test]
fn betti_graded_with_hilbert_check() {
    let out = detgb(&["betti", "--shape", "wide:2", "--graded", "--check-hilbert"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("beta(2,4) = 4"));
    assert!(text.contains("hilbert: consistent"));

    let out = detgb(&["betti", "--shape", "square:2", "--graded", "--check-hilbert", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["totals"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["hilbert"], "consistent");
    assert_eq!(v["table"]["entries"][0], serde_json::json!({"i": 0, "j": 0, "rank": 1}));
}

#[test]
fn gb_of_a_shape_under_both_orders() {
    let out = detgb(&["gb", "--shape", "square:2", "--order", "A"]);
    assert_eq!(stdout(&out).lines().count(), 2);
    let out = detgb(&["gb", "--shape", "square:2", "--order", "B"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("x[1][1]*x[2][2]*y[2] - x[1][2]*x[2][1]*y[2]"));
}

#[test]
fn gb_from_an_ideal_file() {
    let out = detgb(&["gb", "--file", &fixture("simple.ideal")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "y[1]\ny[2]\n");
}

#[test]
fn gb_argument_validation() {
    assert_eq!(detgb(&["gb"]).status.code(), Some(2));
    assert_eq!(
        detgb(&["gb", "--shape", "square:2", "--file", &fixture("simple.ideal")]).status.code(),
        Some(2)
    );
    assert_eq!(detgb(&["gb", "--shape", "square:2", "--order", "C"]).status.code(), Some(2));
    assert_eq!(detgb(&["gb", "--file", "/nonexistent.ideal"]).status.code(), Some(2));
}

#[test]
fn budget_cuts_into_a_running_check() {
    // colon at wide:4 runs for minutes unbounded; the deadline must land
    // inside the computation, not just between checks
    let start = std::time::Instant::now();
    let out = detgb(&["verify", "--suite", "colon", "--shape", "wide:4", "--max-seconds", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(start.elapsed().as_secs() < 30, "took {:?}", start.elapsed());
    assert!(stdout(&out).contains("budget exceeded"));
}
