use std::process::{Command, Output};

use serde_json::Value;

fn qsuspend(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsuspend")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn pair_reports_rank_and_charge() {
    let out = qsuspend(&["pair", "--n", "2", "--q", "1/2", "--trunc", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["epsilon_pairing"], 2);
    let charge = v["charge_pairing"].as_f64().unwrap();
    let bound = v["tail_bound"].as_f64().unwrap();
    assert!((charge + 1.0).abs() <= 1e-6 && bound <= 1e-6);
}

#[test]
fn trace_of_t() {
    let out = qsuspend(&["trace", "--expr", "t", "--n", "1", "--q", "1/2", "--trunc", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let value = v["value"].as_f64().unwrap();
    let bound = v["tail_bound"].as_f64().unwrap();
    assert!((value - 4.0 / 3.0).abs() <= bound + 1e-15);
}

#[test]
fn verify_all_passes_for_one() {
    let out = qsuspend(&["verify", "all", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    let names: Vec<&str> =
        v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 14);
    for s in v["suites"].as_array().unwrap() {
        let ids: Vec<&str> =
            s["cases"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }
}

#[test]
fn failing_verification_exits_two() {
    let out = qsuspend(&["verify", "pairings", "--n", "1", "--q", "0.95", "--trunc", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "fail");
}

#[test]
fn parse_and_config_errors_exit_one() {
    let out = qsuspend(&["normalize", "--expr", "t + + a1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 5"));
    assert_eq!(qsuspend(&["normalize", "--expr", "{t, a1}"]).status.code(), Some(1));
    assert_eq!(qsuspend(&["normalize", "--expr", "a2", "--n", "1"]).status.code(), Some(1));
    assert_eq!(qsuspend(&["verify", "nonsense"]).status.code(), Some(1));
    assert_eq!(qsuspend(&["trace", "--expr", "t", "--q", "2"]).status.code(), Some(1));
    assert_eq!(qsuspend(&["normalize", "--expr", "t", "--preset", "sphere"]).status.code(), Some(1));
    assert_eq!(qsuspend(&["frobnicate"]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_qsuspend"))
        .args(["verify", "gram"])
        .env("QSUSPEND_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn normalize_examples() {
    let v = json(&qsuspend(&["normalize", "--expr", "a1 * t", "--n", "2"]));
    assert_eq!(v["result"], "q^2 * t a1");
    let v = json(&qsuspend(&["normalize", "--expr", "q^2 * t - t"]));
    assert_eq!(v["result"], "(-1 + q^2) * t");
    let v = json(&qsuspend(&["normalize", "--expr", "{z1, z1*}", "--preset", "chart"]));
    assert_eq!(v["result"], "2 + 2*z1 z1*");
}

#[test]
fn modulus_relation_normalizes() {
    let v = json(&qsuspend(&["normalize", "--expr", "q^2 a1* a1 + q^2 a2* a2 - t + t^2", "--n", "2"]));
    assert_eq!(v["result"], "0");
}

#[test]
fn rep_emits_triplets() {
    let v = json(&qsuspend(&["rep", "--expr", "t", "--n", "1", "--q", "1/2", "--trunc", "4"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    for e in entries {
        assert_eq!(e["row"], e["col"]);
    }
    assert_eq!(entries[1]["value"].as_f64().unwrap(), 0.25);
}

#[test]
fn projector_text_entries() {
    let v = json(&qsuspend(&["projector", "--n", "1"]));
    assert_eq!(v["size"], 2);
    assert_eq!(v["entries"][0][0], "1 - t");
    let v = json(&qsuspend(&["projector", "--n", "2", "--k", "1"]));
    assert_eq!(v["kind"], "e_1");
}

#[test]
fn commutator_and_semiclassical_bracket() {
    let v = json(&qsuspend(&["commutator", "--f", "a1", "--g", "t", "--n", "1"]));
    assert_eq!(v["result"], "(-1 + q^2) * t a1");
    let out = qsuspend(&["commutator", "--f", "z1", "--g", "z1*", "--preset", "chart"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&qsuspend(&["bracket", "--f", "alpha1", "--g", "tau1", "--preset", "podles"]));
    let classical =
        json(&qsuspend(&["bracket", "--f", "alpha1", "--g", "tau1", "--preset", "podles-standard"]));
    assert_eq!(v["bracket"], classical["bracket"]);
}

#[test]
fn chart_point_gives_pfaffian() {
    let v = json(&qsuspend(&[
        "bracket",
        "--preset",
        "chart",
        "--n",
        "2",
        "--point",
        "[[0.5, 0.1], [-0.2, 0.3]]",
    ]));
    let det = v["determinant"][0].as_f64().unwrap();
    let pf = v["pfaffian"].as_f64().unwrap();
    assert!((det - pf * pf).abs() <= 1e-8 * det.abs());
    let out = qsuspend(&["bracket", "--preset", "chart", "--n", "2", "--point", "[[0.5, 0.1]]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format_goes_to_stderr() {
    let out = qsuspend(&["trace", "--expr", "t", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("+/-"));
}
