//! The case `n = 1`, `s = 3/4`, where the leading kernel is logarithmic.
//!
//! After the estimates of the integral term, positivity reduces to
//! `-ln(1-t) + ln t + c t^{-1}(1 - 3t/2) ≥ 0` on `0 < t < 5/9` with
//! `c = 5Γ(1/4)² / (48Γ(3/4)²)`. The left side decreases up to
//! `t = c/(c+1)` and increases afterwards, with minimum `ln c + 1 - c/2`.

use super::grid::{GridMin, GridSpec};
use super::report::{CaseId, CaseParams, ScanReport};
use crate::specfun::gamma;

/// Upper end of the `t` range, `1 - x_*(1,3/4)² = 5/9`.
pub const T_MAX: f64 = 5.0 / 9.0;

/// Default number of scan points.
pub const DEFAULT_POINTS: usize = 100_000;

/// `c = 5Γ(1/4)² / (48Γ(3/4)²)`.
pub fn log_case_constant() -> f64 {
    let r = gamma(0.25).expect("regular") / gamma(0.75).expect("regular");
    5.0 * r * r / 48.0
}

/// Left side `-ln(1-t) + ln t + c t^{-1}(1 - 3t/2)`.
pub fn log_case_lhs(c: f64, t: f64) -> f64 {
    -(-t).ln_1p() + t.ln() + c / t * (1.0 - 1.5 * t)
}

/// Derivative `1/(1-t) + 1/t - c/t²`.
pub fn log_case_derivative(c: f64, t: f64) -> f64 {
    1.0 / (1.0 - t) + 1.0 / t - c / (t * t)
}

/// Closed-form facts of the logarithmic case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCaseFacts {
    pub c: f64,
    pub t_star: f64,
    pub min_value: f64,
}

pub fn log_case_facts() -> LogCaseFacts {
    let c = log_case_constant();
    LogCaseFacts {
        c,
        t_star: c / (c + 1.0),
        min_value: c.ln() + 1.0 - 0.5 * c,
    }
}

/// Scans the left side on `points` equally spaced interior points of
/// `(0, 5/9)` and combines the scan with the closed-form minimum.
pub fn log_case_certificate_with(points: usize) -> ScanReport {
    let facts = log_case_facts();
    let step = T_MAX / (points as f64 + 1.0);
    let grid = GridSpec::single_row(0.75, 0.0, T_MAX, step);
    let ts = grid.x_points();
    let scan = ts
        .iter()
        .map(|&t| GridMin {
            value: log_case_lhs(facts.c, t),
            s: 0.75,
            x: t,
        })
        .reduce(GridMin::min)
        .expect("non-empty grid");
    let overall = if facts.min_value < scan.value {
        GridMin {
            value: facts.min_value,
            s: 0.75,
            x: facts.t_star,
        }
    } else {
        scan
    };
    let mut report = ScanReport::new(
        CaseId::LogCase,
        "n=1, s=3/4",
        CaseParams {
            n: 1,
            s: Some(0.75),
            subinterval: None,
        },
        grid,
        overall,
        ts.len(),
    );
    report.constants.insert("c".into(), facts.c);
    report.constants.insert("t_star".into(), facts.t_star);
    report
        .constants
        .insert("closed_form_min".into(), facts.min_value);
    report.constants.insert("scan_min".into(), scan.value);
    report.constants.insert("scan_argmin_t".into(), scan.x);
    report
        .notes
        .push("x-coordinate of argmin is t = 1 - x^2".into());
    report
}

/// The logarithmic-case certificate with the default 10⁵-point scan.
pub fn log_case_certificate() -> ScanReport {
    log_case_certificate_with(DEFAULT_POINTS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_published_digits() {
        let f = log_case_facts();
        assert!((f.c - 0.91).abs() < 0.01);
        assert!((f.t_star - 0.4769).abs() < 1e-4);
        assert!((f.min_value - 0.45).abs() < 0.01);
    }

    #[test]
    fn closed_form_minimum_is_the_value_at_t_star() {
        let f = log_case_facts();
        assert!((log_case_lhs(f.c, f.t_star) - f.min_value).abs() < 1e-14);
        assert!(log_case_derivative(f.c, f.t_star).abs() < 1e-12);
    }

    #[test]
    fn derivative_sign_pattern() {
        let f = log_case_facts();
        for k in 1..10_000 {
            let t = k as f64 * T_MAX / 10_000.0;
            let d = log_case_derivative(f.c, t);
            if t < f.t_star - 1e-12 {
                assert!(d < 0.0, "t={t}");
            } else if t > f.t_star + 1e-12 {
                assert!(d > 0.0, "t={t}");
            }
        }
    }

    #[test]
    fn certificate_passes() {
        let r = log_case_certificate_with(1000);
        assert!(r.passed);
        assert_eq!(r.points_evaluated, 1000);
        assert!(r.constants["scan_min"] >= r.constants["closed_form_min"]);
    }
}
