//! End-to-end tests of the binary: envelope shape, determinism, artifact
//! round-trips, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn orbiq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbiq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("orbiq-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn classify_envelope() {
    let out = orbiq(&["classify", "--curve", "g=0;a=2,3,5", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["results"]["chi_orb"], "1/30");
    assert_eq!(v["results"]["class"], "Fano");
    assert_eq!(v["results"]["dim"], 9);
    assert_eq!(v["results"]["basis"].as_array().unwrap().len(), 9);
}

#[test]
fn classify_calabi_yau_cases() {
    let v = stdout_json(&orbiq(&[
        "classify",
        "--curve",
        "g=0;a=2,2,2,2",
        "--format",
        "json",
    ]));
    assert_eq!(v["results"]["class"], "Calabi-Yau");
    assert_eq!(v["results"]["chi_orb"], "0");
    assert_eq!(v["results"]["dim"], 6);

    let v = stdout_json(&orbiq(&[
        "classify", "--curve", "g=1;a=", "--format", "json",
    ]));
    assert_eq!(v["results"]["class"], "Calabi-Yau");
    assert_eq!(v["results"]["dim"], 2);
}

#[test]
fn malformed_literal_is_usage_error() {
    let out = orbiq(&["classify", "--curve", "g=0,a=2"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("curve literal"), "stderr: {msg}");
}

#[test]
fn results_are_deterministic() {
    let strip = |v: serde_json::Value| {
        let mut v = v;
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    for args in [
        vec![
            "smallqh",
            "solve",
            "--curve",
            "g=0;a=2,3,4",
            "--q",
            "1",
            "--format",
            "json",
        ],
        vec!["reconstruct", "--a", "3", "--format", "json"],
        vec![
            "hurwitz",
            "--d",
            "4",
            "--profiles",
            "4|4|2,1,1",
            "--format",
            "json",
        ],
    ] {
        let a = strip(stdout_json(&orbiq(&args)));
        let b = strip(stdout_json(&orbiq(&args)));
        assert_eq!(a, b, "non-deterministic output for {args:?}");
    }
}

#[test]
fn reconstruct_roundtrips_through_checks() {
    let path = tmp_path("p3.json");
    let out = orbiq(&[
        "reconstruct",
        "--a",
        "3",
        "--out",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let v = stdout_json(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));

    let before = std::fs::read_to_string(&path).unwrap();
    let wdvv = stdout_json(&orbiq(&[
        "wdvv-check",
        "--potential",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert!(wdvv["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));

    let det = stdout_json(&orbiq(&[
        "euler-det",
        "--curve",
        "g=0;a=3",
        "--potential",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert!(det["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
    assert_eq!(det["results"]["det_q0"], "0");
    assert_eq!(det["results"]["det_q1_leading"], "-16/3*t1_1^4");

    // the artifact is accepted unchanged
    let after = std::fs::read_to_string(&path).unwrap();
    assert_eq!(before, after);
    std::fs::remove_file(&path).ok();
}

#[test]
fn euler_det_rejects_mismatched_curve() {
    let path = tmp_path("p2-mismatch.json");
    orbiq(&["reconstruct", "--a", "2", "--out", path.to_str().unwrap()]);
    let out = orbiq(&[
        "euler-det",
        "--curve",
        "g=0;a=3",
        "--potential",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn smallqh_solve_point_count() {
    let v = stdout_json(&orbiq(&[
        "smallqh",
        "solve",
        "--curve",
        "g=0;a=2,3,4",
        "--q",
        "1",
        "--format",
        "json",
    ]));
    let points = v["results"]["solutions"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 8);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn smallqh_solve_non_fano_fails() {
    let out = orbiq(&["smallqh", "solve", "--curve", "g=0;a=2,3,6"]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("not Fano"), "stderr: {msg}");
}

#[test]
fn hurwitz_degree_one() {
    let v = stdout_json(&orbiq(&[
        "hurwitz",
        "--d",
        "1",
        "--profiles",
        "1",
        "--format",
        "json",
    ]));
    assert_eq!(v["results"]["value"], "1");
    assert_eq!(v["results"]["rh_feasible"], true);
}

#[test]
fn pipeline_batch_merges_in_order() {
    let path = tmp_path("curves.txt");
    std::fs::write(&path, "g=0;a=2\ng=0;a=2,3,6\ng=2;a=\n").unwrap();
    let v = stdout_json(&orbiq(&[
        "pipeline",
        "--curves",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]));
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(results[0]["curve"], "g=0;a=2");
    assert_eq!(results[0]["big_quantum"]["status"], "semisimple");
    assert_eq!(results[0]["small_quantum"]["status"], "semisimple");
    assert_eq!(results[1]["curve"], "g=0;a=2,3,6");
    assert_eq!(results[1]["big_quantum"]["status"], "skipped");
    assert_eq!(results[1]["small_quantum"]["status"], "not semisimple");
    assert_eq!(results[2]["curve"], "g=2;a=");
    assert_eq!(results[2]["big_quantum"]["status"], "not semisimple");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
    std::fs::remove_file(&path).ok();
}

#[test]
fn pipeline_text_and_json_agree_on_passes() {
    let text = orbiq(&["pipeline", "--curve", "g=0;a=2,3"]);
    assert!(text.status.success());
    let rendered = String::from_utf8_lossy(&text.stdout).to_string();
    assert!(rendered.contains("[PASS]"));
    assert!(!rendered.contains("[FAIL]"));

    let json = stdout_json(&orbiq(&[
        "pipeline",
        "--curve",
        "g=0;a=2,3",
        "--format",
        "json",
    ]));
    let checks = json["checks"].as_array().unwrap();
    let text_pass_lines = rendered.matches("[PASS]").count();
    assert_eq!(checks.len(), text_pass_lines);
}

#[test]
fn pipeline_opt_in_order_five() {
    let v = stdout_json(&orbiq(&[
        "pipeline", "--curve", "g=0;a=5", "--a-max", "5", "--format", "json",
    ]));
    assert_eq!(v["results"]["big_quantum"]["status"], "semisimple");
    let witness = v["results"]["big_quantum"]["witness"].as_str().unwrap();
    assert!(witness.contains("-1024/5*t1_1^6"), "witness: {witness}");
    // at the default budget the big step is skipped instead
    let v = stdout_json(&orbiq(&[
        "pipeline", "--curve", "g=0;a=5", "--format", "json",
    ]));
    assert_eq!(v["results"]["big_quantum"]["status"], "skipped");
}

#[test]
fn smallqh_solve_other_q_values() {
    // x1 x2 = Q and x1 = x2 at Q = 4: the two points are (2,2) and (-2,-2)
    let v = stdout_json(&orbiq(&[
        "smallqh",
        "solve",
        "--curve",
        "g=0;a=1,1",
        "--q",
        "4",
        "--format",
        "json",
    ]));
    let points = v["results"]["solutions"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    let mut xs: Vec<f64> = points.iter().map(|p| p[0][0].as_f64().unwrap()).collect();
    xs.sort_by(f64::total_cmp);
    assert!((xs[0] + 2.0).abs() < 1e-10 && (xs[1] - 2.0).abs() < 1e-10);
}
