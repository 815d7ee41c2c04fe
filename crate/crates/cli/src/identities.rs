//! Multi-form equivalence checks for the special functions and the
//! eigenvalue bound, with a hook that perturbs Gamma to prove the checks
//! can fail.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use superharm::eigenbounds::{
    lambda_one_d_forms, lambda_upper, lambda_via_torsion, rayleigh_denominator, rayleigh_numerator,
};
use superharm::quadoracle::{integrate_unit, QuadratureSpec};
use superharm::specfun::{self, hyp2f1_abcz};
use superharm::verifier::high_d::big_m_forms;
use superharm::verifier::one_d::mu_forms;
use superharm::{ProblemParams, Result};

/// Seed for the randomly drawn parameter sets.
pub const SEED: u64 = 0x05ee_d2f1;

/// Outcome of one identity over all its sample points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub points: usize,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Arguments at which the largest error occurred.
    pub worst_args: Vec<f64>,
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    points: usize,
    max_rel_error: f64,
    worst_args: Vec<f64>,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            points: 0,
            max_rel_error: 0.0,
            worst_args: Vec::new(),
        }
    }

    fn record(&mut self, args: &[f64], lhs: f64, rhs: f64) {
        let err = if rhs == 0.0 {
            lhs.abs()
        } else {
            ((lhs - rhs) / rhs).abs()
        };
        let err = if err.is_nan() { f64::INFINITY } else { err };
        self.points += 1;
        if err > self.max_rel_error || self.worst_args.is_empty() {
            self.max_rel_error = self.max_rel_error.max(err);
            self.worst_args = args.to_vec();
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck {
            name: self.name,
            points: self.points,
            max_rel_error: self.max_rel_error,
            tolerance: self.tolerance,
            passed: self.max_rel_error <= self.tolerance,
            worst_args: self.worst_args,
        }
    }
}

/// The identity suite. Gamma values that enter the checks go through
/// [`IdentitySuite::gamma`], which can be scaled by `1 + ε`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentitySuite {
    gamma_perturbation: f64,
}

impl IdentitySuite {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplies every Gamma value used by the suite by `1 + eps`.
    pub fn with_gamma_perturbation(eps: f64) -> Self {
        Self {
            gamma_perturbation: eps,
        }
    }

    fn gamma(&self, x: f64) -> Result<f64> {
        Ok(specfun::gamma(x)? * (1.0 + self.gamma_perturbation))
    }

    fn beta(&self, z: f64, w: f64) -> Result<f64> {
        Ok(self.gamma(z)? * self.gamma(w)? / self.gamma(z + w)?)
    }

    pub fn run(&self) -> Result<Vec<IdentityCheck>> {
        Ok(vec![
            self.reflection()?,
            self.duplication()?,
            self.beta_integral()?,
            polynomial_zero()?,
            polynomial_one()?,
            euler_transformation()?,
            identity_one()?,
            identity_two()?,
            quadratic_transformation()?,
            self.series_vs_integral()?,
            lambda_general_forms(),
            lambda_one_d(),
            self.lambda_three_quarters()?,
            mu_equivalence()?,
            m_equivalence()?,
        ])
    }

    fn reflection(&self) -> Result<IdentityCheck> {
        let mut t = Tally::new("gamma_reflection", 1e-12);
        for k in 1..50 {
            let z = k as f64 / 50.0;
            t.record(
                &[z],
                self.gamma(z)? * self.gamma(1.0 - z)? * specfun::sin_pi(z) / PI,
                1.0,
            );
        }
        Ok(t.finish())
    }

    fn duplication(&self) -> Result<IdentityCheck> {
        let mut t = Tally::new("gamma_duplication", 1e-12);
        for k in 1..=80 {
            let z = k as f64 / 4.0;
            let lhs = PI.sqrt() * self.gamma(2.0 * z)?;
            let rhs = 2f64.powf(2.0 * z - 1.0) * self.gamma(z)? * self.gamma(z + 0.5)?;
            t.record(&[z], lhs, rhs);
        }
        Ok(t.finish())
    }

    fn beta_integral(&self) -> Result<IdentityCheck> {
        let mut t = Tally::new("beta_integral", 1e-10);
        for i in 1..=5 {
            for j in 1..=5 {
                let (z, w) = (0.3 * i as f64 + 0.1, 0.4 * j as f64 - 0.1);
                let spec = QuadratureSpec::new(z - 1.0, w - 1.0)?.with_tol(1e-14)?;
                let q = integrate_unit(|_| 1.0, &spec)?;
                t.record(&[z, w], self.beta(z, w)?, q.value);
            }
        }
        Ok(t.finish())
    }

    fn series_vs_integral(&self) -> Result<IdentityCheck> {
        let mut t = Tally::new("hyp2f1_series_vs_integral", 1e-9);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..50 {
            let a = rng.gen_range(-2.0..3.0);
            let b = rng.gen_range(0.2..3.0);
            let c = b + rng.gen_range(0.2..3.0);
            let z = rng.gen_range(0.0..0.9);
            let spec = QuadratureSpec::new(b - 1.0, c - b - 1.0)?.with_tol(1e-13)?;
            let q = integrate_unit(|u: f64| (1.0 - z * u).powf(-a), &spec)?;
            let integral = self.gamma(c)? / (self.gamma(b)? * self.gamma(c - b)?) * q.value;
            t.record(&[a, b, c, z], hyp2f1_abcz(a, b, c, z)?, integral);
        }
        Ok(t.finish())
    }

    fn lambda_three_quarters(&self) -> Result<IdentityCheck> {
        let mut t = Tally::new("lambda_at_three_quarters", 1e-12);
        let p = ProblemParams::new(1, 0.75)?;
        let closed = 2.0 * self.gamma(1.75)? / self.gamma(2.25)?;
        t.record(&[1.0, 0.75], lambda_upper(&p).lambda_upper, closed);
        Ok(t.finish())
    }
}

fn grid_abz() -> impl Iterator<Item = (f64, f64, f64)> {
    (0..5).flat_map(|i| {
        (0..6).map(move |j| {
            let a = 0.35 + 0.4 * i as f64;
            let b = 0.15 + 0.3 * j as f64;
            let z = 0.05 + 0.18 * ((i + j) % 5) as f64;
            (a, b, z)
        })
    })
}

fn polynomial_zero() -> Result<IdentityCheck> {
    let mut t = Tally::new("hyp2f1_polynomial_degree_0", 1e-10);
    for (a, b, z) in grid_abz() {
        t.record(&[b, a + 0.5, z], hyp2f1_abcz(0.0, b, a + 0.5, z)?, 1.0);
    }
    Ok(t.finish())
}

fn polynomial_one() -> Result<IdentityCheck> {
    let mut t = Tally::new("hyp2f1_polynomial_degree_1", 1e-10);
    for (a, b, z) in grid_abz() {
        let c = a + 0.5;
        t.record(&[b, c, z], hyp2f1_abcz(-1.0, b, c, z)?, 1.0 - b / c * z);
    }
    Ok(t.finish())
}

fn euler_transformation() -> Result<IdentityCheck> {
    let mut t = Tally::new("hyp2f1_euler_transformation", 1e-10);
    for (a, b, z) in grid_abz() {
        let c = a + b + 0.3 * (z - 0.4);
        let z = 0.7 * z;
        let lhs = hyp2f1_abcz(a, b, c, z)?;
        let rhs = (1.0 - z).powf(c - a - b) * hyp2f1_abcz(c - a, c - b, c, z)?;
        t.record(&[a, b, c, z], lhs, rhs);
    }
    Ok(t.finish())
}

fn identity_one() -> Result<IdentityCheck> {
    let mut t = Tally::new("hyp2f1_identity_c_eq_a", 1e-10);
    for (a, b, z) in grid_abz() {
        let a = a + b;
        t.record(&[a, b, z], hyp2f1_abcz(a, b, a, z)?, (1.0 - z).powf(-b));
    }
    Ok(t.finish())
}

fn identity_two() -> Result<IdentityCheck> {
    let mut t = Tally::new("hyp2f1_identity_c_eq_a_minus_1", 1e-10);
    for (d, b, z) in grid_abz() {
        let a = b + 1.0 + d;
        let rhs = (1.0 - z).powf(-b - 1.0) * (1.0 - (a - b - 1.0) / (a - 1.0) * z);
        t.record(&[a, b, z], hyp2f1_abcz(a, b, a - 1.0, z)?, rhs);
    }
    Ok(t.finish())
}

fn quadratic_transformation() -> Result<IdentityCheck> {
    let mut t = Tally::new("hyp2f1_quadratic_transformation", 1e-10);
    for (a, b, z) in grid_abz() {
        let root = (1.0 - z).sqrt();
        let w = ((1.0 - root) / (1.0 + root)).powi(2);
        let lhs = hyp2f1_abcz(a, b, 2.0 * b, z)?;
        let rhs =
            4f64.powf(a) * (1.0 + root).powf(-2.0 * a) * hyp2f1_abcz(a, a - b + 0.5, b + 0.5, w)?;
        t.record(&[a, b, z], lhs, rhs);
    }
    Ok(t.finish())
}

fn s_values() -> impl Iterator<Item = f64> {
    (1..50).map(|k| 0.5 + k as f64 / 100.0)
}

fn lambda_general_forms() -> IdentityCheck {
    let mut t = Tally::new("lambda_torsion_and_rayleigh_forms", 1e-12);
    for n in 1..=128 {
        for s in s_values() {
            let p = ProblemParams::new(n, s).expect("valid parameters");
            let lambda = lambda_upper(&p).lambda_upper;
            let args = [n as f64, s];
            t.record(&args, lambda_via_torsion(&p), lambda);
            t.record(
                &args,
                rayleigh_numerator(&p) / rayleigh_denominator(&p),
                lambda,
            );
        }
    }
    t.finish()
}

fn lambda_one_d() -> IdentityCheck {
    let mut t = Tally::new("lambda_one_dimensional_forms", 1e-12);
    for s in s_values() {
        let [first, rest @ ..] = lambda_one_d_forms(s);
        for v in rest {
            t.record(&[s], v, first);
        }
    }
    t.finish()
}

fn mu_equivalence() -> Result<IdentityCheck> {
    let mut t = Tally::new("mu_forms", 1e-12);
    for s in s_values() {
        let [a, b] = mu_forms(s)?;
        t.record(&[s], a, b);
    }
    Ok(t.finish())
}

fn m_equivalence() -> Result<IdentityCheck> {
    let mut t = Tally::new("big_m_forms", 1e-12);
    for n in 2..=40 {
        for s in s_values() {
            let [a, b, c] = big_m_forms(&ProblemParams::new(n, s)?)?;
            t.record(&[n as f64, s], a, c);
            t.record(&[n as f64, s], b, c);
        }
    }
    Ok(t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let checks = IdentitySuite::new().run().unwrap();
        for c in &checks {
            assert!(c.passed, "{c:?}");
            assert!(c.points >= 1);
        }
        let hyp: Vec<_> = checks
            .iter()
            .filter(|c| c.name.starts_with("hyp2f1"))
            .collect();
        assert!(hyp.iter().all(|c| c.points >= 25));
    }

    #[test]
    fn perturbation_is_detected() {
        let checks = IdentitySuite::with_gamma_perturbation(1e-6).run().unwrap();
        let failed: Vec<_> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        assert!(failed.contains(&"gamma_duplication"));
        assert!(failed.contains(&"beta_integral"));
    }
}
