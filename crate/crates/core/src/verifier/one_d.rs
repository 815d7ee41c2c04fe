//! The one-dimensional case `n = 1`, `s ≠ 3/4`.
//!
//! On a subinterval `(a, b) ⊂ [3/5, 1]` the reduced inequality is bounded
//! below by `q_{a,b}(s, x)`, whose derivative in `x` is
//! `(1-x)^{s-3} [C(2-s) - (1-x)^{3s-1}]` with
//! `C = (1+b)^{s-2}(2a-1)μ(s)`. Hence `x_{a,b}(s)` is the unique global
//! minimiser on `(-∞, 1)`, and the minimum over `[a, b]` is attained at
//! `x_{a,b}(s)` clamped into `[a, b]`.

use std::f64::consts::PI;

use super::grid::{GridMin, GridSpec};
use super::report::{CaseId, CaseParams, CurveSample, ScanReport};
use crate::eigenbounds::lambda_upper;
use crate::error::{Error, Result};
use crate::kernels::{kappa, poisson_constant, ProblemParams};
use crate::specfun::{gamma, log_gamma};

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("positive argument")
}

fn check_s(s: f64, func: &'static str) -> Result<()> {
    if !(s > 0.5 && s < 1.0) {
        return Err(Error::InvalidParams(format!("s = {s} outside (1/2, 1)")));
    }
    if s == 0.75 {
        return Err(Error::ThreeQuarters { func });
    }
    Ok(())
}

/// `μ(s) = 2^{2s-1}(1-s)√π/s · Γ(3/2+s)Γ(2s-1) / (Γ(s)³ Γ(3/2+2s) Γ(5/2-2s))`.
pub fn mu(s: f64) -> Result<f64> {
    if !(s > 0.5 && s < 1.0) {
        return Err(Error::InvalidParams(format!("s = {s} outside (1/2, 1)")));
    }
    let ln = (2.0 * s - 1.0) * 2f64.ln() + (1.0 - s).ln() + 0.5 * PI.ln() - s.ln()
        + lg(1.5 + s)
        + lg(2.0 * s - 1.0)
        - 3.0 * lg(s)
        - lg(1.5 + 2.0 * s)
        - lg(2.5 - 2.0 * s);
    Ok(ln.exp())
}

/// Both displayed expressions for `μ(s)`: the one built from `Λ(1,s)` and
/// `|Γ(s-1)|`, and the simplified Gamma quotient returned by [`mu`].
pub fn mu_forms(s: f64) -> Result<[f64; 2]> {
    let p = ProblemParams::new(1, s)?;
    let lambda = lambda_upper(&p).lambda_upper;
    let first = 2f64.powf(4.0 * s - 2.0) * PI.sqrt() * gamma(2.0 * s - 1.0)?
        / (2f64.powf(2.0 * s - 1.0)
            * lambda
            * gamma(s)?
            * gamma(s - 1.0)?.abs()
            * gamma(2.5 - 2.0 * s)?);
    Ok([first, mu(s)?])
}

/// Positive normalisation of the one-dimensional inequality:
/// `κ(1,2s-1)(3-4s)/2 = Γ(5/2-2s) / (4^{2s-1}√π Γ(2s-1))`, finite and
/// positive through `s = 3/4`.
pub fn one_d_normalisation(s: f64) -> f64 {
    (lg(2.5 - 2.0 * s) - (2.0 * s - 1.0) * 4f64.ln() - 0.5 * PI.ln() - lg(2.0 * s - 1.0)).exp()
}

/// The coefficient of `(1-x²)^{s-2}(2x-1)` obtained by composing the
/// kernel constants directly: `γ(1,s)κ(1,s-1)/Λ(1,s)` times the constant
/// `Γ(1-s)√π/Γ(3/2-s)` of the integral lower bound, divided by
/// [`one_d_normalisation`].
pub fn mu_from_kernels(s: f64) -> Result<f64> {
    let p = ProblemParams::new(1, s)?;
    let exterior = poisson_constant(&p) * kappa(1, s - 1.0)? / lambda_upper(&p).lambda_upper;
    let bound = gamma(1.0 - s)? * PI.sqrt() / gamma(1.5 - s)?;
    Ok(exterior * bound / one_d_normalisation(s))
}

/// The partition `3/5 < 7/10 < 4/5 < 9/10 < 1` of `(3/5, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubintervalFamily {
    pub breakpoints: [f64; 5],
}

impl Default for SubintervalFamily {
    fn default() -> Self {
        Self {
            breakpoints: [0.6, 0.7, 0.8, 0.9, 1.0],
        }
    }
}

impl SubintervalFamily {
    /// The four `(aᵢ, bᵢ)` pairs.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.breakpoints.windows(2).map(|w| (w[0], w[1]))
    }
}

fn check_piece(a: f64, b: f64) -> Result<()> {
    if !(a >= 0.6 && a < b && b <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "subinterval ({a}, {b}) must satisfy 3/5 ≤ a < b ≤ 1"
        )));
    }
    Ok(())
}

/// The full reduced left side
/// `(2x^{4s-3} - (1-x)^{4s-3} - (1+x)^{4s-3})/(3-4s) + μ(1-x²)^{s-2}(2x-1)`.
pub fn one_d_expression(s: f64, x: f64) -> Result<f64> {
    check_s(s, "one_d_expression")?;
    let e = 4.0 * s - 3.0;
    let head = (2.0 * x.powf(e) - (1.0 - x).powf(e) - (1.0 + x).powf(e)) / (3.0 - 4.0 * s);
    let tail = mu(s)? * ((s - 2.0) * ((1.0 - x) * (1.0 + x)).ln()).exp() * (2.0 * x - 1.0);
    Ok(head + tail)
}

/// `q_{a,b}(s,x)`, the lower bound of [`one_d_expression`] on `(a, b)`.
///
/// The formula is evaluated for any `x < 1`; it bounds the full expression
/// only for `x ∈ (a, b)`.
pub fn q_ab(s: f64, x: f64, a: f64, b: f64) -> Result<f64> {
    check_s(s, "q_ab")?;
    check_piece(a, b)?;
    if !(x < 1.0) {
        return Err(Error::Domain {
            func: "q_ab",
            detail: format!("x = {x} is not below 1"),
        });
    }
    let e = 4.0 * s - 3.0;
    let denom = 3.0 - 4.0 * s;
    let head = (2.0 * b.powf(e) - (1.0 + b).powf(e)) / denom - (1.0 - x).powf(e) / denom;
    let tail = (1.0 + b).powf(s - 2.0) * (2.0 * a - 1.0) * mu(s)? * (1.0 - x).powf(s - 2.0);
    Ok(head + tail)
}

/// `x_{a,b}(s) = 1 - ((1+b)^{s-2}(2a-1)(2-s)μ)^{1/(3s-1)}`, unclamped.
pub fn x_ab(s: f64, a: f64, b: f64) -> Result<f64> {
    check_s(s, "x_ab")?;
    check_piece(a, b)?;
    let base = (1.0 + b).powf(s - 2.0) * (2.0 * a - 1.0) * (2.0 - s) * mu(s)?;
    Ok(1.0 - base.powf(1.0 / (3.0 * s - 1.0)))
}

/// Minimiser of `q_{a,b}(s,·)` over `[a, b]`, and whether clamping was
/// needed.
pub fn x_ab_clamped(s: f64, a: f64, b: f64) -> Result<(f64, bool)> {
    let x = x_ab(s, a, b)?;
    let clamped = x.clamp(a, b);
    Ok((clamped, clamped != x))
}

struct PieceScan {
    min: GridMin,
    unclamped_min: f64,
    clamped: usize,
    points: usize,
    curve: CurveSample,
}

fn scan_piece(s_points: &[f64], a: f64, b: f64) -> Result<PieceScan> {
    let mut curve = CurveSample::new(["s", "x_ab", "value"]);
    let mut best: Option<GridMin> = None;
    let mut clamped = 0;
    let mut unclamped_min = f64::INFINITY;
    for &s in s_points {
        let (x, was_clamped) = x_ab_clamped(s, a, b)?;
        clamped += usize::from(was_clamped);
        unclamped_min = unclamped_min.min(q_ab(s, x_ab(s, a, b)?, a, b)?);
        let value = q_ab(s, x, a, b)?;
        if value.is_nan() {
            return Err(Error::NonFiniteIntegrand { at: s });
        }
        curve.push(vec![s, x, value])?;
        let cand = GridMin { value, s, x };
        best = Some(best.map_or(cand, |m| m.min(cand)));
    }
    Ok(PieceScan {
        min: best.ok_or_else(|| Error::Grid("empty s-grid".into()))?,
        unclamped_min,
        clamped,
        points: s_points.len(),
        curve,
    })
}

/// One report and one curve per subinterval.
#[derive(Debug, Clone)]
pub struct OneDScan {
    pub report: ScanReport,
    pub curve: CurveSample,
}

/// Evaluates `q_{aᵢ,bᵢ}(s, x_{aᵢ,bᵢ}(s))` on the `s`-grid for each of the
/// four subintervals, and repeats the scan with the step halved to report
/// the refinement delta.
pub fn verify_one_d(grid: &GridSpec) -> Result<Vec<OneDScan>> {
    grid.validate()?;
    let s_points = grid.s_points();
    let fine_points = grid.refined().s_points();
    SubintervalFamily::default()
        .pieces()
        .map(|(a, b)| {
            let base = scan_piece(&s_points, a, b)?;
            let fine = scan_piece(&fine_points, a, b)?;
            let mut report = ScanReport::new(
                CaseId::OneD,
                format!("a={a}, b={b}"),
                CaseParams {
                    n: 1,
                    s: None,
                    subinterval: Some([a, b]),
                },
                grid.clone(),
                base.min,
                base.points + fine.points,
            );
            report.refinement_delta = Some((fine.min.value - base.min.value).abs());
            report
                .constants
                .insert("refined_min".into(), fine.min.value);
            report
                .constants
                .insert("unclamped_min".into(), base.unclamped_min);
            if base.clamped > 0 {
                report.notes.push(format!(
                    "x_ab(s) fell outside [{a}, {b}] and was clamped at {} of {} s-values",
                    base.clamped, base.points
                ));
            }
            Ok(OneDScan {
                report,
                curve: base.curve,
            })
        })
        .collect()
}
