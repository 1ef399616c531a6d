mod support;

use std::process::Command;

use serde_json::Value;

use orbitcat_cli::render_json;
use support::preprojective::{graded_dims, preprojective_dim, DoubleQuiver};
use support::{fixture, orbitcat};

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = orbitcat(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} / {err}"));
    (code, v)
}

#[test]
fn exit_codes() {
    assert_eq!(orbitcat(&["--help"]).0, 0);
    assert_eq!(orbitcat(&["classify", &fixture("a3.json")]).0, 0);
    assert_eq!(orbitcat(&["classify", &fixture("kronecker.json")]).0, 1);
    assert_eq!(orbitcat(&["classify", &fixture("empty.json")]).0, 2);
    assert_eq!(orbitcat(&["classify", "/nonexistent/q.json"]).0, 2);
    assert_eq!(orbitcat(&["frobnicate"]).0, 2);
    assert_eq!(orbitcat(&["hom", "A2", "(0,7)", "(0,1)"]).0, 2);
}

#[test]
fn bad_arrow_reports_location() {
    let (code, _, err) = orbitcat(&["classify", &fixture("bad_arrow.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("arrows[0].to"), "{err}");
}

#[test]
fn grammar_error_reports_position() {
    let (code, _, err) = orbitcat(&["orbit", "A3", "--functor", "t^-1*Q", "check"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 5"), "{err}");
    let (code, v) = json(&["orbit", "A3", "--functor", "t^", "check"]);
    assert_eq!(code, 2);
    assert_eq!(v["passed"], Value::Bool(false));
    assert!(v["error"]["kind"].is_string());
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["classify", "D5"],
        vec!["hom", "A2", "(0,2)", "(0,1)"],
        vec!["orbit", "A3", "--functor", "t^-1*S", "check"],
        vec!["orbit", "A2", "--functor", "t", "endalg", "--object", "P*"],
    ] {
        let mut full = vec!["--json"];
        full.extend_from_slice(&args);
        let (code, out, _) = orbitcat(&full);
        assert_eq!(code, 0, "{args:?}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], "orbitcat/1");
        assert_eq!(render_json(&v), out, "{args:?}");
    }
}

#[test]
fn hom_of_simple_into_projective() {
    let (code, v) = json(&["hom", "A2", "(0,2)", "(0,1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 1);
    let (_, out, _) = orbitcat(&["hom", &fixture("a2.json"), "(0,2)", "(0,1)", "--oracle", "both"]);
    assert!(out.contains("= 1\nmesh 1, rep 1: oracles agree"), "{out}");
}

#[test]
fn oracles_agree_on_window() {
    let (code, out, _) = orbitcat(&["hom", &fixture("a3_source.json"), "--oracle", "both"]);
    assert_eq!(code, 0);
    assert!(out.contains(": 0 mismatches"), "{out}");
}

#[test]
fn projective_end_algebra_of_a2() {
    let (code, v) = json(&["orbit", "A2", "--functor", "t", "endalg", "--object", "P*"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 4);
}

#[test]
fn cluster_check_reports_bound_one() {
    let (code, v) = json(&["orbit", "A3", "--functor", "t^-1*S", "check"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["condition3"]["N"], 1);
    let (code, v) = json(&["orbit", "A3", "--functor", "t^-1*S", "objects"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 9);
    assert_eq!(v["result"]["objects"].as_array().map(Vec::len), Some(9));
}

#[test]
fn degenerate_functor_fails_condition_two() {
    let (code, v) = json(&["orbit", "A3", "--functor", "t*t^-1", "check"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], Value::Bool(false));
    assert_eq!(v["result"]["condition2"]["passed"], Value::Bool(false));
}

#[test]
fn cy_dimension_of_cluster_category() {
    let (code, v) = json(&["orbit", "A2", "--functor", "t^-1*S", "cy"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 2);
}

#[test]
fn dot_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("ar{k}.dot"));
        let (code, _, err) = orbitcat(&[
            "orbit",
            "A3",
            "--functor",
            "t^-1*S",
            "ar",
            "--dot",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        outputs.push(std::fs::read_to_string(path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(outputs[0].starts_with("digraph \""));
    assert_eq!(outputs[0].matches("style=dashed").count(), 9);
}

#[test]
fn cache_dir_is_populated_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_orbitcat"))
            .args(["hom", "D4", "(0,1)", "(3,2)"])
            .env("ORBITCAT_CACHE_DIR", dir.path())
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = run();
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert!(!files.is_empty());
    assert!(files.iter().all(|f| f.to_string_lossy().starts_with("mesh-v1-")));
    assert_eq!(run(), first);
}

#[test]
fn preprojective_oracle_values() {
    let a = |n: usize| DoubleQuiver::of_graph(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>());
    assert_eq!(preprojective_dim(&a(1), 8), Ok(1));
    assert_eq!(preprojective_dim(&a(2), 8), Ok(4));
    assert_eq!(preprojective_dim(&a(3), 8), Ok(10));
    let d4 = DoubleQuiver::of_graph(4, &[(1, 2), (2, 3), (2, 4)]);
    assert_eq!(preprojective_dim(&d4, 12), Ok(28));
    assert_eq!(graded_dims(&DoubleQuiver::ln(1), 8), Ok(vec![1, 1]));
}

#[test]
fn d4_preprojective_matches_end_algebra() {
    let (code, v) = json(&["orbit", "D4", "--functor", "t", "endalg", "--object", "P*"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 28);
}
