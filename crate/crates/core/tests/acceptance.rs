//! One test per acceptance criterion, at the full level. Each prints a
//! `[PASS]` or `[FAIL]` line with the expected and actual values.

use vmonotone::verify::{self, CheckResult, Level, DEFAULT_SEED};

fn report(r: CheckResult) {
    println!("{}", r.line());
    for d in &r.details {
        println!("    {d}");
    }
    assert!(r.passed, "{}", r.line());
}

#[test]
fn moment_table_reproduction() {
    report(verify::check_moment_table());
}

#[test]
fn brute_force_matches_recurrence() {
    report(verify::check_brute_force(Level::Full));
}

#[test]
fn polynomial_pipeline_equivalence() {
    report(verify::check_polynomials());
}

#[test]
fn reference_fixtures() {
    report(verify::check_reference_fixtures());
}

#[test]
fn order_five_polynomials_and_free_agreement() {
    report(verify::check_order_five());
}

#[test]
fn oracle_triangle() {
    report(verify::check_oracle_triangle(Level::Full, DEFAULT_SEED));
}

#[test]
fn kappa_projection_identity() {
    report(verify::check_kappa_projection(DEFAULT_SEED));
}

#[test]
fn central_limit_convergence() {
    report(verify::check_clt_convergence());
}

#[test]
fn non_associativity() {
    report(verify::check_non_associativity(DEFAULT_SEED));
}

#[test]
fn generating_function_consistency() {
    report(verify::check_mgf());
}
