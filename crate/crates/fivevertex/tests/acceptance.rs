//! End-to-end acceptance checks. Each criterion prints one line; run
//! with `cargo test --test acceptance -- --nocapture` to see them on
//! success. Every comparison is exact (tolerance zero).

use std::time::Instant;

use fivevertex::checks::{
    run_free_eigenvalue_check, run_suite, Suite, SuiteConfig, SuiteReport,
};

fn report_line(criterion: &str, description: &str, report: &SuiteReport, started: Instant) {
    let status = if report.all_pass() { "PASS" } else { "FAIL" };
    println!(
        "{criterion} [{status}] {description}: {} ({:.2?})",
        report.summary(),
        started.elapsed()
    );
    if !report.all_pass() {
        for case in report.cases.iter().filter(|c| !c.pass) {
            println!("  failing case {}: expected {}, got {}", case.id, case.expected, case.actual);
        }
    }
}

fn assert_report(criterion: &str, description: &str, report: SuiteReport, started: Instant) {
    report_line(criterion, description, &report, started);
    assert!(report.all_pass(), "{criterion} has failing cases");
}

fn config(seed: u64, max_size: usize, draws: usize) -> SuiteConfig {
    SuiteConfig {
        seed,
        max_size,
        draws,
        only: None,
        solution: None,
    }
}

#[test]
fn criterion_1_inhomogeneous_determinant_oracle_operator_equality() {
    let started = Instant::now();
    let report = run_suite(Suite::Theorem1, &config(42, 5, 25)).unwrap();
    assert_report(
        "criterion 1",
        "determinant = enumeration = operator bracket, 25 draws per geometry",
        report,
        started,
    );
}

#[test]
fn criterion_2_homogeneous_chain_equality() {
    let started = Instant::now();
    let report = run_suite(Suite::Theorem2Chain, &config(43, 5, 10)).unwrap();
    assert_report(
        "criterion 2",
        "enumeration = limit det = ratio, explicit and hypergeometric Hankel forms (both sizes), 10 draws",
        report,
        started,
    );
}

#[test]
fn criterion_3_determinants_for_free_eigenvalue_tables() {
    let started = Instant::now();
    let report = run_free_eigenvalue_check(44, 4, 5);
    assert_report(
        "criterion 3",
        "split determinants equal operator brackets over mixed-site realizations",
        report,
        started,
    );
}

#[test]
fn criterion_4_sigma_form_equation() {
    let started = Instant::now();
    let report = run_suite(Suite::Painleve, &config(45, 5, 1)).unwrap();
    // degenerate edges must be present and reported, not silently skipped
    let degenerate = report
        .cases
        .iter()
        .filter(|c| c.actual.contains("degenerate"))
        .count();
    assert!(degenerate > 0, "degenerate edges must be reported");
    assert_report(
        "criterion 4",
        "sigma-form residual identically zero on all non-degenerate geometries",
        report,
        started,
    );
}

#[test]
fn criterion_5_intertwiner_solution_zoo() {
    let started = Instant::now();
    let report = run_suite(Suite::Rll, &config(46, 5, 5)).unwrap();
    // the zoo must cover all families, including the negative control
    for family in [
        "five-vertex",
        "five-vertex-w4",
        "four-vertex",
        "corrupted",
        "spm-first-m3",
        "spm-second-m2",
        "spm-third-m1",
        "bosonic-plus",
        "bosonic-minus",
    ] {
        assert!(
            report.cases.iter().any(|c| c.id.contains(family)),
            "family {family} missing from the zoo"
        );
    }
    assert_report(
        "criterion 5",
        "intertwining residual and all 16 relations across the solution zoo, 5 points each",
        report,
        started,
    );
}

#[test]
fn criterion_6_determinant_size_identity() {
    let started = Instant::now();
    let report = run_suite(Suite::AppendixB, &config(47, 5, 10)).unwrap();
    assert_eq!(report.cases.len(), 30, "n = 1..3 with 10 draws each");
    assert_report(
        "criterion 6",
        "2n x 2n and n x n determinant forms agree for free values",
        report,
        started,
    );
}

#[test]
fn criterion_7_action_formula_and_string_symmetry() {
    let started = Instant::now();
    let action = run_suite(Suite::ActionLemma, &config(48, 4, 1)).unwrap();
    assert_report(
        "criterion 7a",
        "off-shell action formula residual vectors vanish (n <= 3, M <= 4)",
        action,
        started,
    );
    let started = Instant::now();
    let symmetry = run_suite(Suite::Symmetry, &config(49, 4, 1)).unwrap();
    assert_report(
        "criterion 7b",
        "weighted operator strings invariant under cross-set transpositions (l+m+n <= 4)",
        symmetry,
        started,
    );
}

#[test]
fn criterion_8_configuration_counting() {
    let started = Instant::now();
    let report = run_suite(Suite::Count, &config(50, 5, 1)).unwrap();
    // 4^3 side combinations, minus the seven with no lattice behind them
    // (zero columns or zero rows)
    assert_eq!(report.cases.len(), 57, "boxes with all sides up to 3");
    assert_report(
        "criterion 8",
        "enumeration count = independent array count = box product formula",
        report,
        started,
    );
}

#[test]
fn criterion_9_derivative_and_homogeneity_identities() {
    let started = Instant::now();
    let dets = run_suite(Suite::LemmaDets, &config(51, 5, 10)).unwrap();
    assert_eq!(dets.cases.len(), 10);
    assert_report(
        "criterion 9a",
        "mixed-partial vs Euler-operator determinant identity on random homogeneous functions",
        dets,
        started,
    );
    let started = Instant::now();
    let derivative = run_suite(Suite::DerivativeFormula, &config(52, 5, 10)).unwrap();
    assert_eq!(derivative.cases.len(), 10);
    assert_report(
        "criterion 9b",
        "closed form for iterated derivatives of power products",
        derivative,
        started,
    );
}
