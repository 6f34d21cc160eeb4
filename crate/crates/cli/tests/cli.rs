use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn galdesc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galdesc")).args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = galdesc(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is one JSON report");
    (out.status.code().expect("exit code"), v)
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn verify_gaussian_problem() {
    let (code, v) = json_report(&["verify", &path("qi.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert!(!v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn empty_check_list_is_an_empty_pass() {
    let (code, v) = json_report(&["verify", &path("qi_no_checks.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 0);
}

#[test]
fn cocycle_violation_is_reported_with_a_witness() {
    let (code, v) = json_report(&["verify", &path("bad_cocycle.json")]);
    assert_eq!(code, 1);
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["witness"]["g"], "s");
    assert_eq!(failed[0]["witness"]["h"], "s");
    let (code, _) = json_report(&["descend", &path("bad_cocycle.json")]);
    assert_eq!(code, 3);
}

#[test]
fn hilbert_ninety_descends_to_the_line_through_one_plus_i() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("descended.json");
    let out_s = out.to_string_lossy().into_owned();
    let (code, v) = json_report(&["descend", &path("hilbert90.json"), "--out", &out_s]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["dim"], 1);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["iso"], serde_json::json!([[["1", "1"]]]));
    assert_eq!(written["setting"], "semilinear");
}

#[test]
fn shipped_problems_descend() {
    for name in ["canonical_cubic.json", "biquadratic_seed.json", "s3_sign.json"] {
        let (code, v) = json_report(&["descend", &path(name)]);
        assert_eq!(code, 0, "{name}: {v}");
    }
    // a problem without `b` has nothing to descend
    assert_eq!(galdesc(&["descend", &path("qi.json")]).status.code(), Some(2));
    let (code, _) = json_report(&["artin", &path("artin_sign.json")]);
    assert_eq!(code, 0);
}

#[test]
fn exact_sequence_on_presets_and_files() {
    for groups in ["s3_a3", "d4_c4", "z4_z2"] {
        assert_eq!(json_report(&["exactseq", groups]).0, 0, "{groups}");
    }
    for name in ["s3_a3_groups.json", "d4_c4_groups.json"] {
        assert_eq!(json_report(&["exactseq", &path(name)]).0, 0, "{name}");
    }
}

#[test]
fn malformed_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"setting\": \"semilinear\", \"extension\": ").unwrap();
    let out = galdesc(&["verify", &bad.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = galdesc(&["descend", &dir.path().join("absent.json").to_string_lossy()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn selftest_json_is_deterministic_apart_from_timings() {
    let run = || {
        let (code, mut v) = json_report(&["selftest", "--seed", "5", "--cases", "2"]);
        assert_eq!(code, 0);
        assert!(v["timings_ms"].is_object());
        v.as_object_mut().unwrap().remove("timings_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
    let (code, v) = json_report(&["selftest", "--cases", "0"]);
    assert_eq!((code, v["checks"].as_array().unwrap().len()), (0, 0));
}

#[test]
fn text_summary_ends_with_a_verdict() {
    let out = galdesc(&["verify", &path("qi.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().ends_with("pass"), "{text}");
}
