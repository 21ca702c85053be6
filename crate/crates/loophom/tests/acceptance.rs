//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//!
//! Every test drives the public suite runner exactly as the command-line
//! front end does, and asserts both the verdict and the time budget the
//! criterion carries.

use std::time::{Duration, Instant};

use loophom::suite::{run_suite, CheckStatus, SuiteReport};

fn announce(criterion: &str, ok: bool) {
    println!(
        "acceptance {}: {}",
        criterion,
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance criterion failed: {criterion}");
}

fn check<'r>(report: &'r SuiteReport, id: &str) -> &'r loophom::suite::CheckResult {
    report
        .checks
        .iter()
        .find(|c| c.check == id)
        .unwrap_or_else(|| panic!("suite {} has no check `{id}`", report.suite))
}

#[test]
fn c1_first_theorem_suite_passes_within_a_minute_on_one_worker() {
    let start = Instant::now();
    let report = run_suite("theorem1", 40, 1).unwrap();
    let elapsed = start.elapsed();
    for id in [
        "confluence",
        "declared-product",
        "dim-5",
        "dim-8",
        "dim-10",
        "bialgebra",
        "steenrod-module",
    ] {
        assert_eq!(
            check(&report, id).status,
            CheckStatus::Pass,
            "{id} failed:\n{}",
            report.render_text()
        );
    }
    assert!(
        elapsed < Duration::from_secs(60),
        "took {elapsed:?}, budget is 60s"
    );
    announce(
        "1 (first loop-space computation, degrees <= 40, one worker, < 60s)",
        report.passed(),
    );
}

#[test]
fn c2_second_theorem_suite_passes_within_five_minutes() {
    let start = Instant::now();
    let report = run_suite("theorem2", 48, 1).unwrap();
    let elapsed = start.elapsed();
    for id in [
        "confluence",
        "declared-product",
        "dim-13",
        "dim-14",
        "dim-26",
        "bialgebra",
        "steenrod-module",
    ] {
        assert_eq!(
            check(&report, id).status,
            CheckStatus::Pass,
            "{id} failed:\n{}",
            report.render_text()
        );
    }
    assert!(
        elapsed < Duration::from_secs(300),
        "took {elapsed:?}, budget is 300s"
    );
    announce(
        "2 (second loop-space computation, degrees <= 48, < 5min)",
        report.passed(),
    );
}

#[test]
fn c3_differential_page_recovers_the_loop_basis() {
    let report = run_suite("serre-g2", 30, 1).unwrap();
    assert_eq!(check(&report, "homology-matches").status, CheckStatus::Pass);
    let spot = check(&report, "dim-10");
    assert_eq!(spot.status, CheckStatus::Pass);
    assert_eq!(spot.degree, Some(10));
    announce(
        "3 (desk-checked differential page matches the loop basis, degree 10 = 2)",
        report.passed(),
    );
}

#[test]
fn c4_both_collapse_ladders_terminate_in_the_ground_field() {
    let g2 = run_suite("bss-g2", 40, 1).unwrap();
    let sol = run_suite("bss-sol", 48, 1).unwrap();
    assert!(g2.passed(), "{}", g2.render_text());
    assert!(sol.passed(), "{}", sol.render_text());
    let g2_witness = check(&g2, "ladder").witness.clone().unwrap();
    let sol_witness = check(&sol, "ladder").witness.clone().unwrap();
    assert!(g2_witness.contains("3 pages"), "{g2_witness}");
    assert!(sol_witness.contains("4 pages"), "{sol_witness}");
    announce(
        "4 (both collapse ladders end in the ground field)",
        g2.passed() && sol.passed(),
    );
}

#[test]
fn c5_three_cobar_computations_match_the_loop_bases_within_ten_minutes() {
    let start = Instant::now();
    let di4 = run_suite("cotor-di4", 28, 1).unwrap();
    let bg2 = run_suite("cotor-bg2", 12, 1).unwrap();
    let bsol = run_suite("cotor-bsol", 20, 1).unwrap();
    let elapsed = start.elapsed();
    assert!(di4.passed(), "{}", di4.render_text());
    assert!(bg2.passed(), "{}", bg2.render_text());
    assert!(bsol.passed(), "{}", bsol.render_text());
    assert!(
        elapsed < Duration::from_secs(600),
        "took {elapsed:?}, budget is 600s"
    );
    announce(
        "5 (cobar homology of all three coalgebras matches the loop bases, < 10min)",
        di4.passed() && bg2.passed() && bsol.passed(),
    );
}

#[test]
fn c6_both_boundary_claims_hold_with_certificates() {
    let g2 = run_suite("boundary-g2", 12, 1).unwrap();
    let sol = run_suite("boundary-sol", 22, 1).unwrap();
    assert!(g2.passed(), "{}", g2.render_text());
    assert!(sol.passed(), "{}", sol.render_text());
    let g2_bounds = check(&g2, "relation-bounds");
    assert_eq!(g2_bounds.degree, Some(8));
    assert!(g2_bounds.witness.as_deref().unwrap().contains("y3*t7"));
    let sol_bounds = check(&sol, "relation-bounds");
    assert_eq!(sol_bounds.degree, Some(20));
    let w = sol_bounds.witness.as_deref().unwrap();
    assert!(w.contains("t11^2") && w.contains("u15*t7"), "{w}");
    announce(
        "6 (both commutator classes bound, with explicit preimage certificates)",
        g2.passed() && sol.passed(),
    );
}

#[test]
fn c7_resolution_is_exact_and_reproduces_the_cobar_dimensions() {
    let report = run_suite("resolution", 40, 1).unwrap();
    assert_eq!(check(&report, "complex").status, CheckStatus::Pass);
    assert_eq!(
        check(&report, "ext-matches-cotor").status,
        CheckStatus::Pass
    );
    assert_eq!(check(&report, "ext-basis-26").status, CheckStatus::Pass);
    announce(
        "7 (small resolution verified through degree 40; its dual matches cobar homology through 28)",
        report.passed(),
    );
}

#[test]
fn c8_torsion_exponent_identities_hold_for_every_odd_q_below_ten_thousand() {
    let start = Instant::now();
    let report = run_suite("nu2-range", 9999, 1).unwrap();
    let elapsed = start.elapsed();
    assert!(report.passed(), "{}", report.render_text());
    assert!(
        check(&report, "identity-range")
            .witness
            .as_deref()
            .unwrap()
            .contains("4999 values"),
        "unexpected witness"
    );
    assert!(
        elapsed < Duration::from_secs(1),
        "took {elapsed:?}, budget is 1s"
    );
    announce(
        "8 (2-adic valuation identities for all odd 3 <= q <= 9999, < 1s)",
        report.passed(),
    );
}

#[test]
fn c9_each_corrupted_input_fails_at_its_documented_check() {
    let comm = run_suite("theorem1-corrupt-demo", 20, 1).unwrap();
    assert!(!comm.passed());
    let f = check(&comm, "confluence");
    assert_eq!(f.status, CheckStatus::Fail);
    assert_eq!(f.degree, Some(16));
    let w = f.witness.as_deref().unwrap();
    assert!(w.contains("z6*z6*a4") && w.contains("a4^4"), "{w}");
    for c in &comm.checks {
        if c.check != "confluence" {
            assert_eq!(c.status, CheckStatus::Pass, "{} should still pass", c.check);
        }
    }

    let cop = run_suite("theorem1-corrupt-coproduct-demo", 20, 1).unwrap();
    assert!(!cop.passed());
    let f = check(&cop, "bialgebra");
    assert_eq!(f.status, CheckStatus::Fail);
    let w = f.witness.as_deref().unwrap();
    assert!(
        w.contains("[a4, z6]") && w.contains("a4^2 (x) a2 + a2 (x) a4^2"),
        "{w}"
    );

    let st = run_suite("theorem1-corrupt-steenrod-demo", 20, 1).unwrap();
    assert!(!st.passed());
    let f = check(&st, "steenrod-module");
    assert_eq!(f.status, CheckStatus::Fail);
    let w = f.witness.as_deref().unwrap();
    assert!(w.contains("Sq^2") && w.contains("[a4, z6]"), "{w}");

    announce(
        "9 (corrupted commutator, coproduct, and operation each fail at the documented check)",
        !comm.passed() && !cop.passed() && !st.passed(),
    );
}
