//! Acceptance criteria, one test each. Every test writes a single
//! `PASS`/`FAIL` line straight to standard output so the line is visible
//! whether or not the harness captures output.

use std::io::Write;

use tropvertex_cli::verify::{self, CriterionResult};

fn report(r: CriterionResult) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", r.line());
    let _ = out.flush();
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_pentagon_factorization() {
    report(verify::criterion_1());
}

#[test]
fn criterion_02_reconstruction() {
    report(verify::criterion_2());
}

#[test]
fn criterion_03_q_equals_one_specialization() {
    report(verify::criterion_3());
}

#[test]
fn criterion_04_tropical_golden_values() {
    report(verify::criterion_4());
}

#[test]
fn criterion_05_position_invariance() {
    report(verify::criterion_5());
}

#[test]
fn criterion_06_symmetry_and_specialization() {
    report(verify::criterion_6());
}

#[test]
fn criterion_07_pick_identity() {
    report(verify::criterion_7());
}

#[test]
fn criterion_08_minus_one_structural_vs_symbolic() {
    report(verify::criterion_8());
}

#[test]
fn criterion_09_divergence_diagnostics() {
    report(verify::criterion_9());
}

#[test]
fn criterion_10_welschinger_spectrum() {
    report(verify::criterion_10());
}

#[test]
fn criterion_11_determinism() {
    report(verify::criterion_11());
}
