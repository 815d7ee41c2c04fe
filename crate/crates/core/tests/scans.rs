//! End-to-end behaviour of the positivity scans.

use superharm::verifier::grid::{Exclusion, GridSpec};
use superharm::verifier::high_d::{verify_high_d, Condition, HighDOptions};
use superharm::verifier::log_case::{log_case_certificate, log_case_facts};
use superharm::verifier::one_d::verify_one_d;
use superharm::verifier::{x_star, CaseId};
use superharm::ProblemParams;

fn one_d_grid() -> GridSpec {
    GridSpec::s_line(
        1e-3,
        vec![Exclusion {
            center: 0.75,
            half_width: 1e-3,
        }],
    )
}

#[test]
fn log_case_certificate_is_positive() {
    let r = log_case_certificate();
    assert_eq!(r.case_id, CaseId::LogCase);
    assert!(r.passed);
    assert_eq!(r.points_evaluated, 100_000);
    let f = log_case_facts();
    assert!(r.min_value <= f.min_value + 1e-15);
}

#[test]
fn one_d_pieces_are_positive() {
    let scans = verify_one_d(&one_d_grid()).unwrap();
    assert_eq!(scans.len(), 4);
    for sc in &scans {
        assert!(sc.report.passed, "{:?}", sc.report.params.subinterval);
        assert_eq!(sc.curve.len(), 498);
    }
    for sc in &scans[..3] {
        assert!(sc.report.refinement_delta.unwrap() < 1e-4);
    }
}

#[test]
fn one_d_top_piece_decays_towards_s_equal_one() {
    // μ(s) carries the factor 1 - s, so q on (9/10, 1) tends to 0 as s → 1
    // and the grid minimum sits at the last grid point.
    let scans = verify_one_d(&one_d_grid()).unwrap();
    let top = &scans[3].report;
    assert_eq!(top.argmin[0], 0.999);
    assert!(top.constants["refined_min"] < top.min_value);
}

#[test]
fn high_dimensional_sign_pattern() {
    let grid = GridSpec::unit_square(128);
    let opts = HighDOptions {
        refine: false,
        ..HighDOptions::default()
    };
    let scans = verify_high_d(&(2..=12).collect::<Vec<_>>(), &grid, opts).unwrap();
    for sc in &scans[..10] {
        assert!(
            sc.report.passed && sc.report.certified,
            "n={}",
            sc.report.params.n
        );
    }
    let n12 = &scans[10].report;
    assert!(!n12.passed && !n12.certified);
    assert!(n12.min_value < 0.0);
}

#[test]
fn power_condition_scan_is_uncertified() {
    let grid = GridSpec::unit_square(32);
    let opts = HighDOptions {
        condition: Condition::Power,
        refine: false,
        curve_clamp: Some(0.1),
    };
    let scans = verify_high_d(&[127], &grid, opts).unwrap();
    let r = &scans[0].report;
    assert_eq!(r.case_id, CaseId::HighDD);
    assert!(!r.certified);
}

#[test]
fn threshold_increasing_on_fine_grid() {
    let s: Vec<f64> = (1..1000)
        .map(|k| 0.5 + k as f64 / 2000.0)
        .filter(|&s| s != 0.75)
        .collect();
    let v: Vec<f64> = s
        .iter()
        .map(|&s| x_star(&ProblemParams::new(1, s).unwrap()))
        .collect();
    assert!(v.windows(2).all(|w| w[1] > w[0]));
    assert!(v.iter().all(|&x| x > 0.6 && x < 1.0));
}
