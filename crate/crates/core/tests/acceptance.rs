//! Every acceptance check at its stated tolerance, one test per check.
//!
//! The checks run once, in order, because the immersion check covers the
//! cliques found by all the others.

use std::sync::OnceLock;

use kempe_core::harness::{CheckResult, Harness, HarnessReport};

fn report() -> &'static HarnessReport {
    static REPORT: OnceLock<HarnessReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        let report = Harness::default().run_all();
        for c in &report.checks {
            println!("{}", c.line());
        }
        report
    })
}

fn check(id: u32) -> &'static CheckResult {
    let c = report().checks.iter().find(|c| c.id == id).expect("every check runs");
    println!("{}", c.line());
    assert!(c.passed, "{}", c.line());
    c
}

#[test]
fn criterion_01_catlin_chromatic_numbers() {
    check(1);
}

#[test]
fn criterion_02_catlin_has_no_correct_5_coloring_but_a_correct_6_coloring() {
    check(2);
}

#[test]
fn criterion_03_catlin_k6_minor_from_a_correct_coloring() {
    check(3);
}

#[test]
fn criterion_04_koester_invariants_and_correct_4_coloring() {
    check(4);
}

#[test]
fn criterion_05_elimination_always_reaches_a_backbone() {
    check(5);
}

#[test]
fn criterion_06_critical_coverage_and_swap_invariance() {
    check(6);
}

#[test]
fn criterion_07_k_critical_family_is_correctly_colorable() {
    check(7);
}

#[test]
fn criterion_08_uniquely_colorable_graphs_are_correct() {
    check(8);
}

#[test]
fn criterion_09_search_and_clique_detection_match_brute_force() {
    check(9);
}

#[test]
fn criterion_10_every_clique_is_a_strong_immersion() {
    check(10);
}

#[test]
fn report_is_complete() {
    let r = report();
    assert_eq!(r.version, "1");
    assert_eq!(r.checks.len(), 10);
    assert!(r.instances.iter().any(|i| i.graph == "catlin:2,2" && i.minor.as_ref().is_some_and(|m| m.valid)));
}
