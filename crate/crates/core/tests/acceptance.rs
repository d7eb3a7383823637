//! Acceptance gate: one test per verification criterion.
//!
//! Each test prints a single `ACCEPTANCE n: PASS` or `ACCEPTANCE n: FAIL`
//! line (visible under `--nocapture`) and then asserts, so a red criterion
//! shows its trace in the failure output.

use arquiver::verify::run_criterion;

fn gate(index: usize) {
    let report = run_criterion(index);
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {index}: {verdict}");
    assert!(
        report.pass,
        "criterion {index} ({}) failed:\n{}",
        report.name,
        report.details.join("\n")
    );
}

#[test]
fn acceptance_1_stable_hom_table() {
    gate(1);
}

#[test]
fn acceptance_2_hat_elements_detect_endpoints() {
    gate(2);
}

#[test]
fn acceptance_3_duality_and_hermitian_symmetry() {
    gate(3);
}

#[test]
fn acceptance_4_predicted_pairings() {
    gate(4);
}

#[test]
fn acceptance_5_projective_component_homology() {
    gate(5);
}

#[test]
fn acceptance_6_almost_split_sequences() {
    gate(6);
}

#[test]
fn acceptance_7_rim_criteria() {
    gate(7);
}

#[test]
fn acceptance_8_stabilization_growth() {
    gate(8);
}

#[test]
fn acceptance_9_property_sweep() {
    gate(9);
}
