//! The case `n ≥ 2`.
//!
//! After normalising by `κ(n,2s-1)`, positivity reduces to
//! `x^{4s-2-n} - ₂F₁(n/2+1-2s, 2-2s; n/2 | x²) + M(n,s) R(x) > 0`, where
//! `R(x) = ∫₁^∞ r^{2s-3-n} (r²-1)^{-s} ₂F₁(n/2+1-s, 2-s; n/2 | x²/r²) dr`
//! is bounded below by its `k = 0` term.

use super::grid::{scan_rows, GridMin, GridSpec, ScanValues};
use super::report::{CaseId, CaseParams, CurveSample, ScanReport};
use crate::eigenbounds::lambda_upper;
use crate::error::{Error, Result};
use crate::kernels::{kappa, poisson_constant, unit_sphere_area, ProblemParams};
use crate::quadoracle::{try_integrate_tail, Estimate, QuadratureSpec};
use crate::specfun::{gamma, hyp2f1_abcz, log_gamma, Hyp2f1Series};

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("positive argument")
}

fn check_high_d(params: &ProblemParams) -> Result<()> {
    if params.n() < 2 {
        return Err(Error::InvalidParams(format!(
            "dimension {} is not at least 2",
            params.n()
        )));
    }
    Ok(())
}

fn check_x(func: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain {
            func,
            detail: format!("x = {x} outside (0, 1)"),
        });
    }
    Ok(())
}

fn ln_big_m(n: f64, s: f64) -> f64 {
    let h = 0.5 * n;
    (1.0 - s).ln() + lg(1.0 + 2.0 * s) + lg(2.0 * s - 1.0)
        - 2.0 * s.ln()
        - 4.0 * lg(s)
        - lg(1.0 - s)
        + (n + 2.0 * s).ln()
        + lg(h)
        + lg(h + 1.0 - s)
        - lg(h + 1.0 + 2.0 * s)
        - lg(h + 1.0 - 2.0 * s)
}

/// `M(n,s) = (1-s)Γ(1+2s)Γ(2s-1) / (s²Γ(s)⁴Γ(1-s))
///         · (n+2s)Γ(n/2)Γ(n/2+1-s) / (Γ(n/2+1+2s)Γ(n/2+1-2s))`.
pub fn big_m(params: &ProblemParams) -> Result<f64> {
    check_high_d(params)?;
    Ok(ln_big_m(params.n() as f64, params.s()).exp())
}

/// The three expressions for `M(n,s)`: the kernel composition
/// `|S^{n-1}| γ(n,s) κ(n,s-1) / (Λ(n,s) κ(n,2s-1))`, the factored product
/// of Gamma quotients, and the simplified form returned by [`big_m`].
pub fn big_m_forms(params: &ProblemParams) -> Result<[f64; 3]> {
    check_high_d(params)?;
    let (n, s) = (params.n(), params.s());
    let h = params.half_n();
    let composed = unit_sphere_area(n) * poisson_constant(params) * kappa(n, s - 1.0)?
        / (lambda_upper(params).lambda_upper * kappa(n, 2.0 * s - 1.0)?);
    let g = |x: f64| gamma(x);
    let factored = 2.0 / (g(s)? * g(1.0 - s)?)
        * ((h + s) * g(h)? * g(1.0 + 2.0 * s)?
            / (2f64.powf(2.0 * s) * g(1.0 + s)?.powi(2) * g(h + 1.0 + 2.0 * s)?))
        * (g(h + 1.0 - s)? / (2f64.powf(2.0 * s - 3.0) * g(s - 1.0)?.abs()))
        * (2f64.powf(4.0 * s - 3.0) * g(2.0 * s - 1.0)? / g(h + 1.0 - 2.0 * s)?);
    Ok([composed, factored, big_m(params)?])
}

/// `½ B(n/2+k+1, 1-s) = Γ(n/2+k+1)Γ(1-s) / (2Γ(n/2+k+2-s))`, the value of
/// `∫₁^∞ r^{2s-3-n-2k} (r²-1)^{-s} dr`.
pub fn tail_moment(params: &ProblemParams, k: u32) -> f64 {
    let a = params.half_n() + k as f64 + 1.0;
    let s = params.s();
    0.5 * (lg(a) + lg(1.0 - s) - lg(a + 1.0 - s)).exp()
}

fn ln_tail_coefficient(n: f64, s: f64) -> f64 {
    let h = 0.5 * n;
    ln_big_m(n, s) + lg(h + 1.0) + lg(1.0 - s) - 2f64.ln() - lg(h + 2.0 - s)
}

/// `M(n,s)Γ(n/2+1)Γ(1-s) / (2Γ(n/2+2-s))`, the coefficient of
/// `(1-x²)^{s-2}` in both reduced conditions.
pub fn tail_coefficient(params: &ProblemParams) -> Result<f64> {
    check_high_d(params)?;
    Ok(ln_tail_coefficient(params.n() as f64, params.s()).exp())
}

/// Which reduced condition a scan checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Keeps the hypergeometric term: [`lhs_qc`].
    Hypergeometric,
    /// Replaces it by `(1-x²)^{2s-2}`: [`lhs_qd`].
    Power,
}

impl Condition {
    fn case_id(self) -> CaseId {
        match self {
            Condition::Hypergeometric => CaseId::HighDC,
            Condition::Power => CaseId::HighDD,
        }
    }
}

/// Row evaluator for one `(n, s)`: the constants and series are built once
/// and reused for every `x`.
struct Row {
    expo: f64,
    s: f64,
    ln_coef: f64,
    series: Option<Hyp2f1Series>,
}

impl Row {
    fn new(n: u32, s: f64, condition: Condition) -> Result<Self> {
        let h = 0.5 * n as f64;
        let series = match condition {
            Condition::Hypergeometric => {
                Some(Hyp2f1Series::new(h + 1.0 - 2.0 * s, 2.0 - 2.0 * s, h)?)
            }
            Condition::Power => None,
        };
        Ok(Self {
            expo: 4.0 * s - 2.0 - n as f64,
            s,
            ln_coef: ln_tail_coefficient(n as f64, s),
            series,
        })
    }

    fn eval(&mut self, x: f64) -> Result<f64> {
        let ln_gap = ((1.0 - x) * (1.0 + x)).ln();
        let middle = match &mut self.series {
            Some(series) => series.eval(x * x)?,
            None => ((2.0 * self.s - 2.0) * ln_gap).exp(),
        };
        let tail = (self.ln_coef + (self.s - 2.0) * ln_gap).exp();
        Ok((self.expo * x.ln()).exp() - middle + tail)
    }
}

fn eval_single(
    params: &ProblemParams,
    x: f64,
    condition: Condition,
    func: &'static str,
) -> Result<f64> {
    check_high_d(params)?;
    check_x(func, x)?;
    Row::new(params.n(), params.s(), condition)?.eval(x)
}

/// `x^{4s-2-n} - ₂F₁(n/2+1-2s, 2-2s; n/2 | x²) + C(n,s)(1-x²)^{s-2}` with
/// `C` from [`tail_coefficient`].
pub fn lhs_qc(params: &ProblemParams, x: f64) -> Result<f64> {
    eval_single(params, x, Condition::Hypergeometric, "lhs_qc")
}

/// `x^{4s-2-n} - (1-x²)^{2s-2} + C(n,s)(1-x²)^{s-2}`. For `n ≥ 4` the
/// hypergeometric term is dominated by `(1-x²)^{2s-2}`, so this is a lower
/// bound for [`lhs_qc`]; it is evaluated for any `n ≥ 2`.
pub fn lhs_qd(params: &ProblemParams, x: f64) -> Result<f64> {
    eval_single(params, x, Condition::Power, "lhs_qd")
}

/// `R(x)` by quadrature, with the hypergeometric factor summed directly.
pub fn r_integral_oracle(
    params: &ProblemParams,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_high_d(params)?;
    check_x("r_integral_oracle", x)?;
    let (h, s) = (params.half_n(), params.s());
    let expo = 2.0 * s - 3.0 - params.n() as f64;
    try_integrate_tail(
        |r| Ok(r.powf(expo) * hyp2f1_abcz(h + 1.0 - s, 2.0 - s, h, (x / r).powi(2))?),
        s,
        spec,
        &[],
    )
}

/// Lower and upper bounds for `R(x)`:
/// `Γ(n/2+1)Γ(1-s)/(2Γ(n/2+2-s))·(1-x²)^{s-2}` and
/// `Γ(n/2)Γ(1-s)/(2Γ(n/2+1-s))·(1-x²)^{s-2}`.
pub fn r_integral_bounds(params: &ProblemParams, x: f64) -> Result<(f64, f64)> {
    check_high_d(params)?;
    check_x("r_integral_bounds", x)?;
    let (h, s) = (params.half_n(), params.s());
    let w = ((1.0 - x) * (1.0 + x)).powf(s - 2.0);
    let lower = 0.5 * (lg(h + 1.0) + lg(1.0 - s) - lg(h + 2.0 - s)).exp() * w;
    let upper = 0.5 * (lg(h) + lg(1.0 - s) - lg(h + 1.0 - s)).exp() * w;
    Ok((lower, upper))
}

/// Settings for [`verify_high_d`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighDOptions {
    pub condition: Condition,
    /// Also scan the grid with halved steps and report the change of the
    /// minimum.
    pub refine: bool,
    /// Emit a heat grid with values replaced by `min(clamp, value)`.
    pub curve_clamp: Option<f64>,
}

impl Default for HighDOptions {
    fn default() -> Self {
        Self {
            condition: Condition::Hypergeometric,
            refine: true,
            curve_clamp: None,
        }
    }
}

/// One report per dimension and, when requested, its heat grid.
#[derive(Debug, Clone)]
pub struct HighDScan {
    pub report: ScanReport,
    pub curve: Option<CurveSample>,
}

/// Highest dimension covered by the hypergeometric condition.
pub const CERTIFIED_MAX_N: u32 = 11;

fn scan(n: u32, grid: &GridSpec, condition: Condition) -> Result<ScanValues> {
    scan_rows(&grid.s_points(), &grid.x_points(), |s, xs| {
        let mut row = Row::new(n, s, condition)?;
        xs.iter().map(|&x| row.eval(x)).collect()
    })
}

fn membership(points: &[f64]) -> std::collections::HashSet<u64> {
    points.iter().map(|v| v.to_bits()).collect()
}

fn heat_grid(
    values: &ScanValues,
    keep_s: &dyn Fn(f64) -> bool,
    keep_x: &dyn Fn(f64) -> bool,
    clamp: f64,
) -> Result<CurveSample> {
    let mut curve = CurveSample::new(["s", "x", "value"]);
    for (i, row) in values.values.iter().enumerate() {
        let s = values.s[i];
        if !keep_s(s) {
            continue;
        }
        for (j, &v) in row.iter().enumerate() {
            let x = values.x[j];
            if keep_x(x) {
                curve.push(vec![s, x, v.min(clamp)])?;
            }
        }
    }
    Ok(curve)
}

/// Scans the chosen condition over `grid` for every `n` in `n_list`.
///
/// With `refine` the halved grid is evaluated once and the base minimum is
/// read off the points it shares with `grid`. Scans for `n` beyond the
/// certified range, and all scans of the power condition, are marked
/// `certified = false`.
pub fn verify_high_d(
    n_list: &[u32],
    grid: &GridSpec,
    options: HighDOptions,
) -> Result<Vec<HighDScan>> {
    grid.validate()?;
    if let Some(&n) = n_list.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidParams(format!(
            "dimension {n} is not at least 2"
        )));
    }
    let base_s = membership(&grid.s_points());
    let base_x = membership(&grid.x_points());
    let in_s = |s: f64| base_s.contains(&s.to_bits());
    let in_x = |x: f64| base_x.contains(&x.to_bits());
    n_list
        .iter()
        .map(|&n| {
            let (values, base_min, delta) = if options.refine {
                let fine = scan(n, &grid.refined(), options.condition)?;
                let base = fine
                    .min_where(|i| in_s(fine.s[i]), |j| in_x(fine.x[j]))
                    .ok_or_else(|| Error::Grid("empty grid".into()))?;
                let all = fine.min().expect("non-empty");
                let delta = (all.value - base.value).abs();
                (fine, base, Some((delta, all)))
            } else {
                let v = scan(n, grid, options.condition)?;
                let m = v.min().ok_or_else(|| Error::Grid("empty grid".into()))?;
                (v, m, None)
            };
            let mut report = ScanReport::new(
                options.condition.case_id(),
                format!("n={n}"),
                CaseParams {
                    n,
                    s: None,
                    subinterval: None,
                },
                grid.clone(),
                base_min,
                values.points(),
            );
            report.certified =
                options.condition == Condition::Hypergeometric && n <= CERTIFIED_MAX_N;
            if let Some((d, all)) = delta {
                report.refinement_delta = Some(d);
                record_min(&mut report, "refined", all);
            }
            if !report.certified {
                report
                    .notes
                    .push("outside the certified range; numerical evidence only".into());
            }
            let curve = options
                .curve_clamp
                .map(|clamp| heat_grid(&values, &in_s, &in_x, clamp))
                .transpose()?;
            Ok(HighDScan { report, curve })
        })
        .collect()
}

fn record_min(report: &mut ScanReport, key: &str, m: GridMin) {
    report.constants.insert(format!("{key}_min"), m.value);
    report.constants.insert(format!("{key}_argmin_s"), m.s);
    report.constants.insert(format!("{key}_argmin_x"), m.x);
}
