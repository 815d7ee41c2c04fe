//! Closed forms against quadrature, and each simplification step against
//! the quantity it bounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superharm::kernels::{j_tau, kappa, KernelOrder};
use superharm::quadoracle::{integrate_interval, integrate_tail, sphere_mean, QuadratureSpec};
use superharm::verifier::high_d::{r_integral_bounds, r_integral_oracle, tail_moment};
use superharm::verifier::oracle::{
    exterior_integral_1d, exterior_lower_bound_1d, spot_check, spot_points, SLACK_TOLERANCE,
};
use superharm::ProblemParams;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn j_tau_closed_form_matches_sphere_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spec = QuadratureSpec::default().with_tol(1e-13).unwrap();
    for n in [2, 3, 5] {
        for _ in 0..20 {
            let s = rng.gen_range(0.51..0.99);
            let p = ProblemParams::new(n, s).unwrap();
            let order = if rng.gen_bool(0.5) {
                KernelOrder::leading(&p)
            } else {
                KernelOrder::trailing(&p)
            };
            let x: f64 = rng.gen_range(0.05..0.95);
            let y = rng.gen_range(0.05..1.5);
            if (x - y).abs() < 0.02 {
                continue;
            }
            let expo = 2.0 * order.tau() - n as f64;
            let quad = kappa(n, order.tau()).unwrap()
                * sphere_mean(n, |d| d.powf(expo), x, y, &spec).unwrap().value;
            let closed = j_tau(&p, &order, x, y).unwrap();
            assert!(
                rel(closed, quad) < 1e-8,
                "n={n} s={s} x={x} y={y}: {closed} vs {quad}"
            );
        }
    }
}

#[test]
fn tail_moments_match_integrate_tail() {
    let spec = QuadratureSpec::default();
    for (n, s) in [(2, 0.55), (3, 0.7), (7, 0.95)] {
        let p = ProblemParams::new(n, s).unwrap();
        for k in 0..3 {
            let e = 2.0 * s - 3.0 - n as f64 - 2.0 * k as f64;
            let q = integrate_tail(|r| r.powf(e), s, &spec).unwrap().value;
            assert!(rel(q, tail_moment(&p, k)) < 1e-8, "n={n} s={s} k={k}");
        }
    }
}

#[test]
fn tail_map_agrees_with_direct_integration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let upper = 1e6;
    for _ in 0..10 {
        let s = rng.gen_range(0.51..0.99);
        let p = rng.gen_range(0.5..4.0);
        let c = rng.gen_range(0.0..2.0);
        let f = |z: f64| z.powf(-p) * (1.0 + c / z);
        let mapped = integrate_tail(f, s, &QuadratureSpec::default())
            .unwrap()
            .value;
        let weight = QuadratureSpec::new(-s, 0.0)
            .unwrap()
            .with_max_subdivisions(400)
            .unwrap();
        let breaks: Vec<f64> = (1..20).map(|k| 2f64.powi(k)).collect();
        let direct =
            integrate_interval(|z| f(z) * (z + 1.0).powf(-s), 1.0, upper, &weight, &breaks)
                .unwrap()
                .value;
        // beyond the cut-off (z²-1)^{-s} = z^{-2s}(1 + O(z^{-2}))
        let tail = upper.powf(1.0 - p - 2.0 * s) / (p + 2.0 * s - 1.0)
            + c * upper.powf(-p - 2.0 * s) / (p + 2.0 * s);
        assert!(rel(direct + tail, mapped) < 1e-8, "s={s} p={p} c={c}");
    }
}

#[test]
fn exterior_lower_bound_never_exceeds_integral() {
    let spec = QuadratureSpec::default();
    for i in 1..=20 {
        for j in 1..=20 {
            let x = i as f64 / 21.0;
            let s = 0.5 + j as f64 / 42.0;
            let integral = exterior_integral_1d(s, x, &spec).unwrap().value;
            let bound = exterior_lower_bound_1d(s, x).unwrap();
            assert!(integral - bound >= -SLACK_TOLERANCE, "x={x} s={s}");
        }
    }
}

#[test]
fn sandwich_brackets_r_integral() {
    let spec = QuadratureSpec::default();
    for n in [2, 3, 6] {
        for i in 1..=10 {
            for j in 1..=10 {
                let x = i as f64 / 11.0;
                let s = 0.5 + j as f64 / 22.0;
                let p = ProblemParams::new(n, s).unwrap();
                let r = r_integral_oracle(&p, x, &spec).unwrap().value;
                let (lo, hi) = r_integral_bounds(&p, x).unwrap();
                assert!(
                    r - lo >= -SLACK_TOLERANCE && hi - r >= -SLACK_TOLERANCE,
                    "n={n} x={x} s={s}"
                );
            }
        }
    }
}

#[test]
fn direct_oracle_dominates_simplified_bound() {
    let report = spot_check(&spot_points(), &QuadratureSpec::default()).unwrap();
    assert_eq!(report.samples.len(), 30);
    assert!(report.passed, "min slack {}", report.min_slack);
    assert!(report.samples.iter().all(|o| o.scale > 0.0));
}
