//! Quadrature evaluation of the inequality before any simplification, used
//! to confirm that each analytic lower bound stays below the quantity it
//! replaces.

use std::f64::consts::PI;

use serde::Serialize;

use super::high_d::lhs_qc;
use super::one_d::{one_d_expression, one_d_normalisation};
use super::threshold::x_star;
use crate::eigenbounds::lambda_upper;
use crate::error::{Error, Result};
use crate::kernels::{kappa, poisson_constant, unit_sphere_area, ProblemParams};
use crate::quadoracle::{sphere_mean, try_integrate_tail, Estimate, QuadratureSpec};
use crate::specfun::gamma;

fn check_unit(func: &'static str, s: f64, x: f64) -> Result<()> {
    if !(s > 0.5 && s < 1.0) {
        return Err(Error::InvalidParams(format!("s = {s} outside (1/2, 1)")));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain {
            func,
            detail: format!("x = {x} outside (0, 1)"),
        });
    }
    Ok(())
}

/// `∫₁^∞ [(z-x)^{2s-3} + (z+x)^{2s-3}] / (z (z²-1)^s) dz` by quadrature.
pub fn exterior_integral_1d(s: f64, x: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    check_unit("exterior_integral_1d", s, x)?;
    let e = 2.0 * s - 3.0;
    let gap = 1.0 - x;
    let breaks = [1.0 + gap, 1.0 + 4.0 * gap];
    try_integrate_tail(
        |z| Ok(((z - x).powf(e) + (z + x).powf(e)) / z),
        s,
        spec,
        &breaks,
    )
}

/// `Γ(1-s)√π/Γ(3/2-s) · (1-x²)^{s-2} (2x-1)`, a lower bound for
/// [`exterior_integral_1d`].
pub fn exterior_lower_bound_1d(s: f64, x: f64) -> Result<f64> {
    check_unit("exterior_lower_bound_1d", s, x)?;
    let c = gamma(1.0 - s)? * PI.sqrt() / gamma(1.5 - s)?;
    Ok(c * ((1.0 - x) * (1.0 + x)).powf(s - 2.0) * (2.0 * x - 1.0))
}

/// The unsimplified left side at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QbisOracle {
    /// `J_{2s-1}(x;0) - J_{2s-1}(x;e₁) + Λ⁻¹ ∫ P_s(0,z) J_{s-1}(x;z) dz`.
    pub raw: f64,
    /// Positive normalisation: `κ(n,2s-1)` for `n ≥ 2`,
    /// `κ(1,2s-1)(3-4s)/2` for `n = 1`.
    pub scale: f64,
    /// `raw / scale`.
    pub value: f64,
    /// The analytic lower bound on the same scale: [`lhs_qc`] for `n ≥ 2`,
    /// [`one_d_expression`] for `n = 1`.
    pub simplified: f64,
}

impl QbisOracle {
    /// `value - simplified`, nonnegative when the simplification is sound.
    pub fn slack(&self) -> f64 {
        self.value - self.simplified
    }
}

/// Evaluates the unsimplified inequality by quadrature at `x ∈ (x_*, 1)`.
///
/// For `n ≥ 2` every spherical mean is integrated numerically, including
/// the one inside the exterior integral. For `n = 1` the two-point means are
/// exact and only the exterior integral is numerical.
pub fn direct_qbis_oracle(
    params: &ProblemParams,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<QbisOracle> {
    let threshold = x_star(params);
    if !(x > threshold && x < 1.0) {
        return Err(Error::Domain {
            func: "direct_qbis_oracle",
            detail: format!("x = {x} outside ({threshold}, 1)"),
        });
    }
    let (n, s) = (params.n(), params.s());
    let exterior_scale =
        poisson_constant(params) * kappa(n, s - 1.0)? / lambda_upper(params).lambda_upper;
    if n == 1 {
        if s == 0.75 {
            return Err(Error::ThreeQuarters {
                func: "direct_qbis_oracle",
            });
        }
        let e = 4.0 * s - 3.0;
        let k = kappa(1, 2.0 * s - 1.0)?;
        let interior = 0.5 * k * (2.0 * x.powf(e) - (1.0 - x).powf(e) - (1.0 + x).powf(e));
        let raw = interior + exterior_scale * exterior_integral_1d(s, x, spec)?.value;
        let scale = one_d_normalisation(s);
        return Ok(QbisOracle {
            raw,
            scale,
            value: raw / scale,
            simplified: one_d_expression(s, x)?,
        });
    }
    let k = kappa(n, 2.0 * s - 1.0)?;
    let e_lead = 4.0 * s - 2.0 - n as f64;
    let e_trail = 2.0 * s - 2.0 - n as f64;
    let inner = QuadratureSpec {
        tol: spec.tol * 1e-2,
        ..*spec
    };
    let at_origin = k * x.powf(e_lead);
    let at_pole = k * sphere_mean(n, |d| d.powf(e_lead), x, 1.0, &inner)?.value;
    let radial = try_integrate_tail(
        |r| Ok(sphere_mean(n, |d| d.powf(e_trail), x, r, &inner)?.value / r),
        s,
        spec,
        &[],
    )?;
    let raw = at_origin - at_pole + unit_sphere_area(n) * exterior_scale * radial.value;
    Ok(QbisOracle {
        raw,
        scale: k,
        value: raw / k,
        simplified: lhs_qc(params, x)?,
    })
}

/// Slack below which a sample counts as a violation of the chain.
pub const SLACK_TOLERANCE: f64 = 1e-10;

/// One spot check of the simplification chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleSample {
    pub n: u32,
    pub s: f64,
    pub x: f64,
    pub raw: f64,
    pub scale: f64,
    pub value: f64,
    pub simplified: f64,
    pub slack: f64,
}

/// All spot checks of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub samples: Vec<OracleSample>,
    pub min_slack: f64,
    pub passed: bool,
}

/// Thirty sample points: `n ∈ {1, 2, 3}`, five values of `s`, and two radii
/// between `x_*` and 1.
pub fn spot_points() -> Vec<(ProblemParams, f64)> {
    let mut points = Vec::with_capacity(30);
    for n in 1..=3 {
        for s in [0.6, 0.65, 0.7, 0.8, 0.9] {
            let p = ProblemParams::new(n, s).expect("valid parameters");
            let xs = x_star(&p);
            for frac in [0.3, 0.7] {
                points.push((p, xs + frac * (1.0 - xs)));
            }
        }
    }
    points
}

/// Runs [`direct_qbis_oracle`] at each point.
pub fn spot_check(points: &[(ProblemParams, f64)], spec: &QuadratureSpec) -> Result<OracleReport> {
    let samples = points
        .iter()
        .map(|(p, x)| {
            let o = direct_qbis_oracle(p, *x, spec)?;
            Ok(OracleSample {
                n: p.n(),
                s: p.s(),
                x: *x,
                raw: o.raw,
                scale: o.scale,
                value: o.value,
                simplified: o.simplified,
                slack: o.slack(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_slack = samples
        .iter()
        .map(|o| o.slack)
        .fold(f64::INFINITY, f64::min);
    Ok(OracleReport {
        passed: min_slack >= -SLACK_TOLERANCE,
        min_slack,
        samples,
    })
}
