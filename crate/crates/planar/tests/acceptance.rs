//! Acceptance suite: every quantitative contract of the crate, one
//! criterion per test, each printing a pass/fail line with its runtime.
//!
//! Criteria delegate to the named verification suites (shared with the
//! CLI `verify` subcommand) and pin a handful of frozen values directly.

use num_rational::Ratio;
use planar::geom::Point;
use planar::planeset::gallery::bad_arc_quotient_exact;
use planar::suites::{run_suite, SuiteReport};
use std::time::Duration;

fn run(criterion: usize, name: &str, limit: Duration) -> SuiteReport {
    let rep = run_suite(name, 0).expect("suite exists");
    let status = if rep.pass { "PASS" } else { "FAIL" };
    println!(
        "ACCEPTANCE {criterion:02} [{name}] {status} in {} ms (limit {} ms)",
        rep.elapsed_ms,
        limit.as_millis()
    );
    for item in &rep.items {
        println!(
            "    [{}] {}: {}",
            if item.pass { "ok" } else { "FAIL" },
            item.label,
            item.detail
        );
    }
    assert!(rep.pass, "criterion {criterion} failed");
    assert!(
        rep.elapsed_ms <= limit.as_millis(),
        "criterion {criterion} exceeded its runtime limit: {} ms",
        rep.elapsed_ms
    );
    rep
}

#[test]
fn criterion_01_exact_lipschitz_quotients() {
    // frozen values: 3 at n = 1 and 16/3 at n = 2, exactly
    assert_eq!(bad_arc_quotient_exact(1), Ratio::new(3, 1));
    assert_eq!(bad_arc_quotient_exact(2), Ratio::new(16, 3));
    run(1, "bad-arc", Duration::from_secs(1));
}

#[test]
fn criterion_02_power_function_inequalities() {
    run(2, "zpow", Duration::from_secs(5));
}

#[test]
fn criterion_03_ftc_quadrature() {
    run(3, "ftc", Duration::from_secs(30));
}

#[test]
fn criterion_04_product_rule() {
    run(4, "product-rule", Duration::from_secs(30));
}

#[test]
fn criterion_05_cantor_decomposition() {
    // frozen spot values: the first and deepest complementary intervals
    let path = planar::geom::PolyPath::segment(Point::ZERO, Point::new(1.0, 0.0)).unwrap();
    let intervals = planar::pathint::interval_decomposition(
        &planar::pathint::FunctionExpr::Cantor,
        &planar::pathint::FunctionExpr::constant(num_complex::Complex64::ZERO),
        &path,
        1e-6,
        729,
    )
    .unwrap();
    assert!((intervals[0].0 - 1.0 / 729.0).abs() < 1e-12);
    assert!((intervals[0].1 - 2.0 / 729.0).abs() < 1e-12);
    let mid = intervals
        .iter()
        .find(|iv| (iv.0 - 1.0 / 3.0).abs() < 1e-12)
        .expect("level-1 interval present");
    assert!((mid.1 - 2.0 / 3.0).abs() < 1e-12);
    run(5, "cantor", Duration::from_secs(10));
}

#[test]
fn criterion_06_geodesic_oracle_equivalence() {
    run(6, "geodesic", Duration::from_secs(120));
}

#[test]
fn criterion_07_dented_square_equivalence() {
    run(7, "dented", Duration::from_secs(60));
}

#[test]
fn criterion_08_sector_deleted_disc() {
    run(8, "rsa", Duration::from_secs(60));
}

#[test]
fn criterion_09_arc_test_functions() {
    run(9, "arc-chain", Duration::from_secs(60));
}

#[test]
fn criterion_10_pair_algebra_embedding() {
    run(10, "semidirect", Duration::from_secs(30));
}

#[test]
fn criterion_11_tail_sum_classification() {
    run(11, "tails", Duration::from_secs(10));
}
