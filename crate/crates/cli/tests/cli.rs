//! End-to-end tests driving the compiled binary over the shipped fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

use arquiver::io;
use arquiver::module::{is_isomorphic, uniserial};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn arquiver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arquiver")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn temp_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn validate_summarizes_the_algebra() {
    let out = arquiver(&["validate", &fixture("a3.alg")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("a3: valid, symmetric, Loewy length 3"), "{text}");
    assert!(text.contains("nakayama permutation: [0]"), "{text}");
    assert!(text.contains("cartan matrix:"), "{text}");
}

#[test]
fn validate_flags_non_self_injective_algebras() {
    let out = arquiver(&["validate", &fixture("qa2.alg")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("self-injective: no"), "{text}");
    assert!(text.contains("nakayama permutation: none"), "{text}");
}

#[test]
fn validate_rejects_malformed_files() {
    let path = temp_file("arq_cli_bad.alg", "not json");
    let out = arquiver(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("malformed file"), "{}", stderr(&out));
}

#[test]
fn ar_seq_reports_the_known_middles() {
    let out = arquiver(&["ar-seq", &fixture("a5.alg"), &fixture("a5_v2.mod")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("middle decomposes as: V1 + V3"), "{text}");
    assert!(text.contains("split: no"), "{text}");
}

#[test]
fn ar_seq_rejects_projective_input() {
    let out = arquiver(&["ar-seq", &fixture("a3.alg"), &fixture("a3_p0.mod")]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("non-projective"), "{}", stderr(&out));
}

#[test]
fn ar_seq_emits_files_that_reload() {
    let dir = std::env::temp_dir().join("arq_cli_emit");
    let out = arquiver(&[
        "ar-seq",
        &fixture("a5.alg"),
        &fixture("a5_v2.mod"),
        "--emit",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let alg = io::load_algebra(&PathBuf::from(fixture("a5.alg"))).unwrap();
    let tau = io::load_module(&dir.join("tau_m.mod"), &alg).unwrap();
    assert!(is_isomorphic(&tau, &uniserial(&alg, 2), 0).unwrap());
    let middle = io::load_module(&dir.join("middle.mod"), &alg).unwrap();
    let expected = uniserial(&alg, 1).direct_sum(&uniserial(&alg, 3));
    assert!(is_isomorphic(&middle, &expected, 0).unwrap());
}

#[test]
fn pairing_commands_print_exact_values() {
    let out = arquiver(&["pairing", &fixture("a3.alg"), &fixture("a3_c0.cx"), &fixture("a3_c0.cx")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("pairing: 3"), "{}", stdout(&out));

    let out =
        arquiver(&["pairing-t", &fixture("a3.alg"), &fixture("a3_c0.cx"), &fixture("a3_c1.cx")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("pairing_t: 2*t^-1 + 2"), "{}", stdout(&out));
}

#[test]
fn prediction_matches_for_chain_indices() {
    let out = arquiver(&[
        "pairing-t",
        &fixture("a3.alg"),
        &fixture("a3_c0.cx"),
        &fixture("a3_c1.cx"),
        "--predict",
        "0",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("prediction: MATCH"), "{}", stdout(&out));
}

#[test]
fn strict_mode_turns_mismatches_into_failures() {
    let args = [
        "pairing-t",
        &fixture("a3.alg"),
        &fixture("a3_c0.cx"),
        &fixture("a3_c1.cx"),
        "--predict",
        "1",
        "1",
    ];
    let out = arquiver(&args);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("prediction: MISMATCH"), "{}", stdout(&out));

    let mut strict: Vec<&str> = vec!["--strict"];
    strict.extend(args);
    let out = arquiver(&strict);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("prediction: MISMATCH"), "{}", stdout(&out));
}

#[test]
fn distance_walks_to_the_rim() {
    let out = arquiver(&["distance", &fixture("a3.alg"), &fixture("a3_c2.cx")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("distance from rim: 2"), "{}", stdout(&out));

    let out = arquiver(&["distance", &fixture("a5.alg"), &fixture("a5_bigh2.cx")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("on rim: yes"), "{}", stdout(&out));
}

#[test]
fn component_prints_the_projective_picture() {
    let out = arquiver(&["component", &fixture("a3.alg"), &fixture("a3_c0.cx"), "--depth", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("distance from rim: 0"), "{text}");
    assert!(text.contains("P0(3)"), "{text}");
    assert!(text.contains("V1(1)"), "{text}");
    assert!(text.contains("[x projective row]"), "{text}");
    assert!(text.contains("stabilization module: V1 (dim 1)"), "{text}");
}

#[test]
fn minimize_strips_contractible_terms() {
    let path = temp_file(
        "arq_cli_contractible.cx",
        r#"{ "algebra": "a3", "terms": { "0": [1], "1": [1] }, "diffs": { "1": [[[1, 0, 0]]] } }"#,
    );
    let out_path = std::env::temp_dir().join("arq_cli_minimized.cx");
    let out = arquiver(&[
        "minimize",
        &fixture("a3.alg"),
        path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("before: 1:3 0:3 (total dim 6)"), "{text}");
    assert!(text.contains("after:  zero (total dim 0)"), "{text}");
    let alg = io::load_algebra(&PathBuf::from(fixture("a3.alg"))).unwrap();
    let min = io::load_complex(&out_path, &alg).unwrap();
    assert!(min.degrees().is_empty());
}

#[test]
fn homology_labels_modules() {
    let out = arquiver(&["homology", &fixture("a3.alg"), &fixture("a3_c1.cx")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("H_1: V2 (dim 2)"), "{text}");
    assert!(text.contains("H_0: V2 (dim 2)"), "{text}");
}

#[test]
fn decompose_counts_summands_deterministically() {
    let path = temp_file(
        "arq_cli_two_stalks.cx",
        r#"{ "algebra": "a3", "terms": { "0": [2] }, "diffs": {} }"#,
    );
    let args = ["--seed", "5", "decompose", &fixture("a3.alg"), path.to_str().unwrap()];
    let first = arquiver(&args);
    assert_eq!(code(&first), 0);
    assert!(stdout(&first).contains("indecomposable summands: 2"), "{}", stdout(&first));
    let second = arquiver(&args);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn rigid_detects_self_extensions() {
    let out = arquiver(&["rigid", &fixture("a3.alg"), &fixture("a3_c0.cx")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("rigid: yes"), "{}", stdout(&out));

    let out = arquiver(&["rigid", &fixture("a3.alg"), &fixture("a3_c1.cx")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("self pairing: 2*t^-1 + 4 + 2*t"), "{text}");
    assert!(text.contains("rigid: no"), "{text}");
}

#[test]
fn record_format_emits_json() {
    let out = arquiver(&["--format", "record", "validate", &fixture("a3.alg")]);
    assert_eq!(code(&out), 0);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["command"], "validate");
    assert_eq!(record["symmetric"], true);
    assert_eq!(record["loewy_length"], 3);

    let out = arquiver(&[
        "--format",
        "record",
        "distance",
        &fixture("a3.alg"),
        &fixture("a3_c2.cx"),
    ]);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["distance"], 2);
    assert_eq!(record["on_rim"], false);
}

#[test]
fn verify_runs_a_single_criterion() {
    let out = arquiver(&["verify", "--criterion", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("criterion 1"), "{text}");
    assert!(text.contains(": PASS"), "{text}");
}

#[test]
fn unknown_subcommands_are_usage_errors() {
    let out = arquiver(&["frobnicate"]);
    assert_eq!(code(&out), 2);
}
