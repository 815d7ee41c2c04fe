//! Adaptive quadrature for integrands with algebraic endpoint singularities.
//!
//! `∫ₐᵇ (t-a)^α (b-t)^β f(t) dt` is split into panels. Panels touching an
//! endpoint use a Gauss–Jacobi rule that integrates the singular factor
//! exactly; interior panels use Gauss–Legendre. Every panel is evaluated
//! with a 12- and a 24-point rule and the difference serves as its error
//! estimate. The panel with the largest estimate is bisected until the sum
//! of estimates meets the tolerance.
//!
//! On top of the engine sit the substitutions used to validate the closed
//! forms elsewhere in the crate: the semi-infinite map `z = 1/t`, the
//! reduction of spherical means to one dimension, and the Poisson
//! extension of a radial exterior profile.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::kernels::{self, ProblemParams};

const LOW_ORDER: usize = 12;
const HIGH_ORDER: usize = 24;
const ROUNDOFF_FACTOR: f64 = 64.0 * f64::EPSILON;

/// Endpoint exponents and stopping controls for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub alpha: f64,
    pub beta: f64,
    pub tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
            tol: 1e-10,
            max_subdivisions: 60,
        }
    }
}

impl QuadratureSpec {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Self {
            alpha,
            beta,
            ..Self::default()
        }
        .validated()
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        Self { tol, ..self }.validated()
    }

    pub fn with_max_subdivisions(self, max_subdivisions: usize) -> Result<Self> {
        Self {
            max_subdivisions,
            ..self
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        if !(self.alpha > -1.0 && self.beta > -1.0) {
            return Err(Error::InvalidParams(format!(
                "endpoint exponents ({}, {}) must exceed -1",
                self.alpha, self.beta
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParams(format!(
                "tolerance {} must be positive",
                self.tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParams(
                "max_subdivisions must be positive".into(),
            ));
        }
        Ok(self)
    }
}

/// A quadrature value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

/// Gauss rule on `[0, 1]` for the weight `u^α`: nodes, their complements
/// `1 - u`, and weights.
#[derive(Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub complements: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Golub–Welsch construction of the `n`-point rule for `∫₀¹ u^α g(u) du`.
///
/// This is the Jacobi rule with parameters `(0, α)` on `[-1, 1]`, mapped to
/// the unit interval. The zeroth moment `1/(α+1)` is elementary, so no Gamma
/// evaluation enters the rule.
pub fn gauss_jacobi_unit(n: usize, alpha: f64) -> Rule {
    let (a, b) = (0.0, alpha);
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            let s = 2.0 * kf + a + b;
            (b * b - a * a) / (s * (s + 2.0))
        };
        jacobi[(k, k)] = diag;
        if k + 1 < n {
            let j = kf + 1.0;
            let s = 2.0 * j + a + b;
            let beta = if j == 1.0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
            } else {
                4.0 * j * (j + a) * (j + b) * (j + a + b) / (s * s * (s + 1.0) * (s - 1.0))
            };
            jacobi[(k, k + 1)] = beta.sqrt();
            jacobi[(k + 1, k)] = beta.sqrt();
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    let mu0 = 1.0 / (alpha + 1.0);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let x = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (x, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    Rule {
        nodes: pairs.iter().map(|&(x, _)| 0.5 * (1.0 + x)).collect(),
        complements: pairs.iter().map(|&(x, _)| 0.5 * (1.0 - x)).collect(),
        weights: pairs.iter().map(|&(_, w)| w).collect(),
    }
}

thread_local! {
    static RULES: RefCell<HashMap<(u64, usize), Rc<Rule>>> = RefCell::new(HashMap::new());
}

fn rule(n: usize, alpha: f64) -> Rc<Rule> {
    RULES.with(|cache| {
        cache
            .borrow_mut()
            .entry((alpha.to_bits(), n))
            .or_insert_with(|| Rc::new(gauss_jacobi_unit(n, alpha)))
            .clone()
    })
}

/// Which singular factor a panel integrates exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
enum PanelKind {
    Left,
    Right,
    Interior,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    magnitude: f64,
}

/// The weighted problem `∫ₐᵇ (t-a)^α (b-t)^β f(t) dt`.
struct Problem<'f, F> {
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
    f: &'f F,
}

impl<F: Fn(f64) -> Result<f64>> Problem<'_, F> {
    fn kind(&self, lo: f64, hi: f64) -> PanelKind {
        if lo == self.a && self.alpha != 0.0 {
            PanelKind::Left
        } else if hi == self.b && self.beta != 0.0 {
            PanelKind::Right
        } else {
            PanelKind::Interior
        }
    }

    fn checked(&self, t: f64) -> Result<f64> {
        let v = (self.f)(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { at: t })
        }
    }

    /// Applies one rule to `[lo, hi]`; returns (value, sum of |terms|).
    fn apply(&self, lo: f64, hi: f64, order: usize) -> Result<(f64, f64)> {
        let w = hi - lo;
        let mut sum = 0.0;
        let mut mag = 0.0;
        match self.kind(lo, hi) {
            PanelKind::Left => {
                // t - a = w u, weight u^α handled by the rule
                let r = rule(order, self.alpha);
                let scale = w.powf(self.alpha + 1.0);
                for i in 0..order {
                    let t = lo + w * r.nodes[i];
                    let right = (self.b - hi) + w * r.complements[i];
                    let term = r.weights[i] * right.powf(self.beta) * self.checked(t)?;
                    sum += term;
                    mag += term.abs();
                }
                Ok((scale * sum, scale * mag))
            }
            PanelKind::Right => {
                // b - t = w u
                let r = rule(order, self.beta);
                let scale = w.powf(self.beta + 1.0);
                for i in 0..order {
                    let t = hi - w * r.nodes[i];
                    let left = (lo - self.a) + w * r.complements[i];
                    let term = r.weights[i] * left.powf(self.alpha) * self.checked(t)?;
                    sum += term;
                    mag += term.abs();
                }
                Ok((scale * sum, scale * mag))
            }
            PanelKind::Interior => {
                let r = rule(order, 0.0);
                for i in 0..order {
                    let t = lo + w * r.nodes[i];
                    let left = (lo - self.a) + w * r.nodes[i];
                    let right = (self.b - hi) + w * r.complements[i];
                    let mut weight = 1.0;
                    if self.alpha != 0.0 {
                        weight *= left.powf(self.alpha);
                    }
                    if self.beta != 0.0 {
                        weight *= right.powf(self.beta);
                    }
                    let term = r.weights[i] * weight * self.checked(t)?;
                    sum += term;
                    mag += term.abs();
                }
                Ok((w * sum, w * mag))
            }
        }
    }

    fn panel(&self, lo: f64, hi: f64) -> Result<Panel> {
        let (coarse, _) = self.apply(lo, hi, LOW_ORDER)?;
        let (fine, magnitude) = self.apply(lo, hi, HIGH_ORDER)?;
        Ok(Panel {
            lo,
            hi,
            value: fine,
            error: (fine - coarse).abs(),
            magnitude,
        })
    }
}

fn adaptive<F: Fn(f64) -> Result<f64>>(
    problem: &Problem<'_, F>,
    spec: &QuadratureSpec,
    breaks: &[f64],
) -> Result<Estimate> {
    let (a, b) = (problem.a, problem.b);
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&t| t > a && t < b).collect();
    if cuts.is_empty() {
        cuts.push(0.5 * (a + b));
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = vec![a];
    edges.extend(cuts);
    edges.push(b);
    let mut panels = edges
        .windows(2)
        .map(|e| problem.panel(e[0], e[1]))
        .collect::<Result<Vec<_>>>()?;

    let mut subdivisions = 0;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let magnitude: f64 = panels.iter().map(|p| p.magnitude).sum();
        if error <= spec.tol || error <= ROUNDOFF_FACTOR * magnitude {
            return Ok(Estimate {
                value,
                error,
                panels: panels.len(),
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels[worst];
        let mid = 0.5 * (p.lo + p.hi);
        if subdivisions >= spec.max_subdivisions || mid <= p.lo || mid >= p.hi {
            return Err(Error::ToleranceNotMet {
                value,
                error,
                tol: spec.tol,
            });
        }
        panels[worst] = problem.panel(p.lo, mid)?;
        panels.push(problem.panel(mid, p.hi)?);
        subdivisions += 1;
    }
}

/// `∫ₐᵇ (t-a)^α (b-t)^β f(t) dt` with optional interior breakpoints where
/// `f` is not smooth. The integrand may fail; its first error is returned.
pub fn try_integrate_interval<F>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    breaks: &[f64],
) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(a < b && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParams(format!("bad interval [{a}, {b}]")));
    }
    let spec = spec.validated()?;
    let problem = Problem {
        a,
        b,
        alpha: spec.alpha,
        beta: spec.beta,
        f: &f,
    };
    adaptive(&problem, &spec, breaks)
}

/// `∫ₐᵇ (t-a)^α (b-t)^β f(t) dt`.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    breaks: &[f64],
) -> Result<Estimate> {
    try_integrate_interval(|t| Ok(f(t)), a, b, spec, breaks)
}

/// `∫₀¹ t^α (1-t)^β f(t) dt`.
pub fn integrate_unit<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<Estimate> {
    integrate_interval(f, 0.0, 1.0, spec, &[])
}

/// `∫₁^∞ f(z) (z²-1)^{-s} dz`.
///
/// With `z = 1/t` the integral becomes
/// `∫₀¹ t^{2s-2} (1-t)^{-s} · f(1/t) (1+t)^{-s} dt`, so the endpoint
/// exponents are fixed by `s`; only `tol` and `max_subdivisions` are read
/// from `spec`. `breaks` are points `z > 1` where `f` is not smooth.
pub fn try_integrate_tail<F>(
    f: F,
    s: f64,
    spec: &QuadratureSpec,
    breaks: &[f64],
) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    let spec = QuadratureSpec {
        alpha: 2.0 * s - 2.0,
        beta: -s,
        ..*spec
    };
    let t_breaks: Vec<f64> = breaks
        .iter()
        .filter(|&&z| z > 1.0)
        .map(|z| 1.0 / z)
        .collect();
    try_integrate_interval(
        |t| Ok(f(1.0 / t)? * (1.0 + t).powf(-s)),
        0.0,
        1.0,
        &spec,
        &t_breaks,
    )
}

/// `∫₁^∞ f(z) (z²-1)^{-s} dz`; see [`try_integrate_tail`].
pub fn integrate_tail<F: Fn(f64) -> f64>(f: F, s: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    try_integrate_tail(|z| Ok(f(z)), s, spec, &[])
}

/// `∫_L^∞ f(z) (z²-1)^{-s} dz` for `L > 1`, via `z = 1/t` on `(0, 1/L]`.
pub fn integrate_tail_from<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(lower > 1.0) {
        return Err(Error::InvalidParams(format!(
            "lower limit {lower} must exceed 1"
        )));
    }
    let spec = QuadratureSpec {
        alpha: 2.0 * s - 2.0,
        beta: 0.0,
        ..*spec
    };
    integrate_interval(
        |t| f(1.0 / t) * (1.0 - t * t).powf(-s),
        0.0,
        1.0 / lower,
        &spec,
        &[],
    )
}

fn check_sphere_args(n: u32, r: f64, y: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParams(
            "spherical means need n ≥ 2; for n = 1 use the two-point average".into(),
        ));
    }
    if !(r >= 0.0 && y >= 0.0) {
        return Err(Error::Domain {
            func: "sphere_mean",
            detail: format!("radii ({r}, {y}) must be nonnegative"),
        });
    }
    Ok(())
}

/// Surface average over `∂B_r ⊂ ℝⁿ` of a function of the distance to
/// `y e₁`, reduced to `∫₋₁¹ (1-t²)^{(n-3)/2} g(d(t)) dt` with
/// `d(t)² = r² + y² - 2ryt` and normalised by the same integral with `g ≡ 1`.
pub fn sphere_mean<G>(n: u32, g: G, r: f64, y: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    G: Fn(f64) -> f64,
{
    check_sphere_args(n, r, y)?;
    let a = 0.5 * (n as f64 - 3.0);
    let spec = QuadratureSpec {
        alpha: a,
        beta: a,
        ..*spec
    };
    // t = 1 - 2u, so 1 - t² = 4u(1-u) and d² = (r-y)² + 4ryu
    let gap = (r - y) * (r - y);
    let num = integrate_unit(|u| g((gap + 4.0 * r * y * u).sqrt()), &spec)?;
    let den = integrate_unit(|_| 1.0, &spec)?;
    Ok(Estimate {
        value: num.value / den.value,
        error: num.error / den.value + num.value.abs() * den.error / (den.value * den.value),
        panels: num.panels,
    })
}

/// Surface average over `∂B_r` of `|θ - y e₁|^{-2α}`. Handles `r = y`
/// exactly by moving the singular factor into the quadrature weight.
pub fn sphere_mean_power(
    n: u32,
    alpha: f64,
    r: f64,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_sphere_args(n, r, y)?;
    if r != y {
        return sphere_mean(n, |d| d.powf(-2.0 * alpha), r, y, spec);
    }
    if 2.0 * alpha >= n as f64 - 1.0 {
        return Err(Error::Coincidence { x: r, y });
    }
    let a = 0.5 * (n as f64 - 3.0);
    // d² = 4r²u with u → 0 at the coincident point
    let num_spec = QuadratureSpec {
        alpha: a - alpha,
        beta: a,
        ..*spec
    };
    let scale = (4.0 * r * r).powf(-alpha);
    let num = integrate_unit(|_| scale, &num_spec)?;
    let den = integrate_unit(
        |_| 1.0,
        &QuadratureSpec {
            alpha: a,
            beta: a,
            ..*spec
        },
    )?;
    Ok(Estimate {
        value: num.value / den.value,
        error: num.error / den.value + num.value.abs() * den.error / (den.value * den.value),
        panels: num.panels,
    })
}

/// Radial exterior datum `g(ρ)`, `ρ > 1`, for the Poisson extension.
pub trait RadialProfile: Sync {
    fn value(&self, rho: f64) -> f64;

    /// Radii where the profile is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Test profiles with explicit superlevel sets.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `g ≡ c`.
    Constant(f64),
    /// `g = height · 𝟙_{(1, outer)}`.
    Step { height: f64, outer: f64 },
    /// `g = height · 𝟙_{[inner, ∞)}`.
    OuterStep { height: f64, inner: f64 },
    /// `g = ρ^{-p}`.
    Power(f64),
    /// `g = 1 - ρ^{-p}`.
    ComplementPower(f64),
    /// Sum of several profiles.
    Sum(Vec<Profile>),
}

impl RadialProfile for Profile {
    fn value(&self, rho: f64) -> f64 {
        match self {
            Profile::Constant(c) => *c,
            Profile::Step { height, outer } => {
                if rho < *outer {
                    *height
                } else {
                    0.0
                }
            }
            Profile::OuterStep { height, inner } => {
                if rho >= *inner {
                    *height
                } else {
                    0.0
                }
            }
            Profile::Power(p) => rho.powf(-p),
            Profile::ComplementPower(p) => 1.0 - rho.powf(-p),
            Profile::Sum(parts) => parts.iter().map(|g| g.value(rho)).sum(),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Profile::Step { outer, .. } => vec![*outer],
            Profile::OuterStep { inner, .. } => vec![*inner],
            Profile::Sum(parts) => parts.iter().flat_map(|g| g.breakpoints()).collect(),
            _ => Vec::new(),
        }
    }
}

/// The Poisson extension `h(x) = ∫_{|y|>1} P_s(x e₁, y) g(|y|) dy` of a
/// radial exterior profile, at radius `x ∈ [0, 1)`.
///
/// In polar coordinates `y = ρθ`,
/// `h(x) = γ(n,s)(1-x²)^s ∫₁^∞ g(ρ) ρ^{n-1} A(ρ) (ρ²-1)^{-s} dρ` where
/// `A(ρ) = ∫_{S^{n-1}} |ρθ - x e₁|^{-n} dθ` is itself a spherical mean,
/// computed numerically (two points `±1` when `n = 1`).
pub fn poisson_extension<P: RadialProfile + ?Sized>(
    params: &ProblemParams,
    g: &P,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Boundary {
            x_norm: x,
            y_norm: f64::NAN,
        });
    }
    let n = params.n();
    let s = params.s();
    let area = kernels::unit_sphere_area(n);
    let inner = QuadratureSpec {
        tol: spec.tol * 1e-2,
        ..*spec
    };
    let angular = |rho: f64| -> Result<f64> {
        if n == 1 {
            return Ok(1.0 / (rho - x) + 1.0 / (rho + x));
        }
        // |ρθ - x e₁| = |xθ - ρ e₁|: a mean over ∂B_x seen from ρ e₁
        let mean = sphere_mean(n, |d| d.powf(-(n as f64)), x, rho, &inner)?;
        Ok(area * rho.powi(n as i32 - 1) * mean.value)
    };
    let radial = try_integrate_tail(
        |rho| {
            let gv = g.value(rho);
            if gv == 0.0 {
                return Ok(0.0);
            }
            Ok(gv * angular(rho)?)
        },
        s,
        spec,
        &g.breakpoints(),
    )?;
    let pre = kernels::poisson_constant(params) * (1.0 - x * x).powf(s);
    Ok(Estimate {
        value: pre * radial.value,
        error: pre * radial.error,
        panels: radial.panels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{beta, gamma, hyp2f1_abcz};

    fn spec(alpha: f64, beta: f64) -> QuadratureSpec {
        QuadratureSpec::new(alpha, beta).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(-1.0, 0.0).is_err());
        assert!(QuadratureSpec::new(0.0, -1.5).is_err());
        assert!(spec(0.0, 0.0).with_tol(0.0).is_err());
        assert!(spec(0.0, 0.0).with_max_subdivisions(0).is_err());
    }

    #[test]
    fn jacobi_rule_integrates_monomials() {
        let r = gauss_jacobi_unit(12, -0.4);
        for k in 0..20 {
            let q: f64 = r
                .nodes
                .iter()
                .zip(&r.weights)
                .map(|(u, w)| w * u.powi(k))
                .sum();
            let exact = 1.0 / (k as f64 + 0.6);
            assert!((q - exact).abs() < 1e-14 * exact.max(1.0), "k={k}");
        }
    }

    #[test]
    fn constant_integrand() {
        let e = integrate_unit(|_| 1.0, &QuadratureSpec::default()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn beta_weight() {
        let e = integrate_unit(|_| 1.0, &spec(-0.3, 0.3)).unwrap();
        assert!((e.value - beta(0.7, 1.3).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn euler_integral_for_hypergeometric() {
        let (a, b, c, z) = (1.4, 0.8, 2.1, 0.5);
        let e = integrate_unit(|t| (1.0 - z * t).powf(-a), &spec(b - 1.0, c - b - 1.0)).unwrap();
        let expected = gamma(b).unwrap() * gamma(c - b).unwrap() / gamma(c).unwrap()
            * hyp2f1_abcz(a, b, c, z).unwrap();
        assert!((e.value - expected).abs() < 1e-10);
    }

    #[test]
    fn tolerance_failure_carries_estimate() {
        let tight = spec(0.0, 0.0)
            .with_tol(1e-30)
            .unwrap()
            .with_max_subdivisions(2)
            .unwrap();
        match integrate_unit(|t| (t - 0.3).abs().sqrt(), &tight) {
            Err(Error::ToleranceNotMet { value, .. }) => assert!((value - 0.5).abs() < 1e-3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let r = integrate_unit(
            |t| if t > 0.7 { f64::NAN } else { 1.0 },
            &QuadratureSpec::default(),
        );
        assert!(matches!(r, Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn tail_moment() {
        // ∫₁^∞ z^{2s-n-3}(z²-1)^{-s} dz = Γ(n/2+1)Γ(1-s) / (2Γ(n/2+2-s))
        let (n, s) = (2.0, 0.7);
        let e =
            integrate_tail(|z| z.powf(2.0 * s - n - 3.0), s, &QuadratureSpec::default()).unwrap();
        let expected = gamma(n / 2.0 + 1.0).unwrap() * gamma(1.0 - s).unwrap()
            / (2.0 * gamma(n / 2.0 + 2.0 - s).unwrap());
        assert!((e.value - expected).abs() < 1e-10);
    }

    #[test]
    fn tail_split_is_additive() {
        let s = 0.6;
        let f = |z: f64| z.powf(-2.5);
        let d = QuadratureSpec::default();
        let whole = integrate_tail(f, s, &d).unwrap().value;
        let far = integrate_tail_from(f, 3.0, s, &d).unwrap().value;
        let near = integrate_interval(|z| f(z) * (z + 1.0).powf(-s), 1.0, 3.0, &spec(-s, 0.0), &[])
            .unwrap()
            .value;
        assert!((whole - near - far).abs() < 1e-10);
    }

    #[test]
    fn sphere_mean_of_constant() {
        for n in 2..7 {
            let m = sphere_mean(n, |_| 1.0, 0.4, 0.9, &QuadratureSpec::default()).unwrap();
            assert!((m.value - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn sphere_mean_newton_kernel() {
        // mean over ∂B_r of |θ - y e₁|^{-n} = y^{2-n} / (y² - r²) for r < y
        for n in 2..6u32 {
            let (r, y) = (0.6, 1.3);
            let m = sphere_mean_power(n, 0.5 * n as f64, r, y, &QuadratureSpec::default()).unwrap();
            let exact = y.powi(2 - n as i32) / (y * y - r * r);
            assert!((m.value - exact).abs() < 1e-10 * exact, "n={n}");
        }
    }

    #[test]
    fn sphere_mean_coincident() {
        let d = QuadratureSpec::default();
        assert!(matches!(
            sphere_mean_power(3, 1.0, 0.5, 0.5, &d),
            Err(Error::Coincidence { .. })
        ));
        // n = 3, |θ - r e₁|^{-1} over ∂B_r averages to 1/r
        let m = sphere_mean_power(3, 0.5, 0.5, 0.5, &d).unwrap();
        assert!((m.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn poisson_extension_of_constant_is_one() {
        for (n, s) in [(1, 0.6), (2, 0.7), (3, 0.85)] {
            let p = ProblemParams::new(n, s).unwrap();
            for x in [0.0, 0.3, 0.8] {
                let h =
                    poisson_extension(&p, &Profile::Constant(1.0), x, &QuadratureSpec::default())
                        .unwrap();
                assert!((h.value - 1.0).abs() < 1e-9, "n={n} x={x}: {}", h.value);
            }
        }
    }

    #[test]
    fn poisson_extension_of_power_increases() {
        let p = ProblemParams::new(2, 0.7).unwrap();
        let d = QuadratureSpec::default();
        let h: Vec<f64> = [0.2, 0.5, 0.8]
            .iter()
            .map(|&x| {
                poisson_extension(&p, &Profile::Power(4.0), x, &d)
                    .unwrap()
                    .value
            })
            .collect();
        assert!(h[0] < h[1] && h[1] < h[2], "{h:?}");
    }

    #[test]
    fn profiles() {
        let g = Profile::Sum(vec![
            Profile::Step {
                height: 1.0,
                outer: 2.0,
            },
            Profile::OuterStep {
                height: 0.5,
                inner: 3.0,
            },
        ]);
        assert_eq!(g.value(1.5), 1.0);
        assert_eq!(g.value(2.5), 0.0);
        assert_eq!(g.value(3.5), 0.5);
        assert_eq!(g.breakpoints(), vec![2.0, 3.0]);
        assert!((Profile::ComplementPower(2.0).value(2.0) - 0.75).abs() < 1e-15);
    }
}
