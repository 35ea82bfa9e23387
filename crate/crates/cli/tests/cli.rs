//! Black-box tests of the `cjsr` binary against the bundled fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

use cjsr_core::schema::SystemFile;
use cjsr_core::spectra::NormKind;
use cjsr_core::systems::stp_lift;
use cjsr_core::jsr_bounds;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cjsr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing `{key}` in:\n{text}"))
        .to_string()
}

#[test]
fn criterion_10_thread_count_determinism() {
    let mut ok = true;
    for name in ["example1.json", "example2.json", "example3.json"] {
        let path = fixture(name);
        for args in [
            vec!["bounds", path.as_str(), "--k", "6"],
            vec!["gripenberg", path.as_str(), "--delta", "0.05"],
        ] {
            let mut one = args.clone();
            one.extend(["--threads", "1"]);
            let mut eight = args.clone();
            eight.extend(["--threads", "8"]);
            let a = run(&one);
            let b = run(&eight);
            if a.stdout != b.stdout || a.status.code() != b.status.code() {
                ok = false;
                eprintln!("{name} {:?}: outputs differ", args[0]);
            }
        }
    }
    println!(
        "criterion 10 (identical output for 1 vs 8 threads): {}",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn bounds_example1_reproduces_reference_bracket() {
    let out = run(&["bounds", &fixture("example1.json"), "--k", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lower: f64 = field(&text, "lower").parse().unwrap();
    let upper: f64 = field(&text, "upper").parse().unwrap();
    assert!((1.1330..=1.1350).contains(&lower), "lower = {lower}");
    assert!((1.1570..=1.1770).contains(&upper), "upper = {upper}");
    assert_eq!(field(&text, "verdict"), "unstable");
}

#[test]
fn gripenberg_example3_is_stable() {
    let out = run(&[
        "gripenberg",
        &fixture("example3.json"),
        "--delta",
        "0.02",
        "--cap",
        "1000000",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lower: f64 = field(&text, "lower").parse().unwrap();
    let upper: f64 = field(&text, "upper").parse().unwrap();
    assert!(lower <= 0.9748172 && 0.9748172 <= upper, "[{lower}, {upper}]");
    assert!(upper - lower <= 0.05);
    assert_eq!(field(&text, "verdict"), "stable");
}

#[test]
fn accepts_reports_per_word_verdicts() {
    let out = run(&["accepts", &fixture("example2.json"), "231", "22"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("231: accept"), "got:\n{text}");
    assert!(text.contains("22: reject"), "got:\n{text}");
}

#[test]
fn lift_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("lifted.json");
    let out = run(&[
        "lift",
        &fixture("example3.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let reloaded = SystemFile::load(&out_path).unwrap().to_arbitrary().unwrap();

    let original = SystemFile::load(fixture("example3.json")).unwrap();
    let c = original.to_constrained().unwrap();
    let in_memory = stp_lift(&c).unwrap().to_arbitrary();
    let norm = NormKind::block(NormKind::Two, c.dfa().num_states());
    for k in 1..=4 {
        let a = jsr_bounds(&reloaded, k, &norm).unwrap();
        let b = jsr_bounds(&in_memory, k, &norm).unwrap();
        assert!((a.lower - b.lower).abs() < 1e-12);
        assert!((a.upper - b.upper).abs() < 1e-12);
    }
}

#[test]
fn json_output_is_machine_readable() {
    let out = run(&[
        "bounds",
        &fixture("example1.json"),
        "--k",
        "5",
        "--output",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "bounds");
    assert_eq!(v["k"], 5);
    assert!(v["lower"].as_f64().unwrap() > 1.0);
    assert_eq!(v["verdict"], "unstable");
}

#[test]
fn report_emits_one_row_per_horizon() {
    let out = run(&["report", &fixture("example3.json"), "--k", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row["k"], i as u64 + 1);
        assert!(row["lower"].as_f64().unwrap() <= row["upper"].as_f64().unwrap() + 1e-12);
    }
}

#[test]
fn tproduct_writes_label_dictionary() {
    let out = run(&["tproduct", &fixture("example3.json"), "--t", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let words = v["label_words"].as_array().unwrap();
    assert_eq!(v["m"].as_u64().unwrap() as usize, words.len());
    assert!(words.iter().all(|w| w.as_str().unwrap().len() == 2));
}

#[test]
fn malformed_edge_is_reported_with_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"n": 1, "m": 1, "matrices": [[[1.0]]],
           "dfa": {"states": 4, "labels": 1, "edges": [[5, 1, 1]]}}"#,
    )
    .unwrap();
    let out = run(&["bounds", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("dfa.edges[0]"), "stderr: {err}");
}

#[test]
fn missing_file_fails_cleanly() {
    let out = run(&["bounds", "/nonexistent/system.json"]);
    assert_eq!(out.status.code(), Some(1));
}
