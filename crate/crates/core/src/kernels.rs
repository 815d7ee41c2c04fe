//! Fundamental solutions `F_τ` of `(-Δ)^τ`, their spherical means `J_τ`,
//! and the nonlocal Poisson kernel of the unit ball.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{self, Hyp2f1Series};

/// Dimension `n ≥ 1` and fractional order `s ∈ (1/2, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    n: u32,
    s: f64,
}

impl ProblemParams {
    pub fn new(n: u32, s: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("dimension must be at least 1".into()));
        }
        if !(s > 0.5 && s < 1.0) {
            return Err(Error::InvalidParams(format!("s = {s} outside (1/2, 1)")));
        }
        Ok(Self { n, s })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `n / 2` as a float.
    pub fn half_n(&self) -> f64 {
        0.5 * self.n as f64
    }

    /// True only at `(n, s) = (1, 3/4)`, where `F_{2s-1}` is logarithmic.
    pub fn is_log_case(&self) -> bool {
        KernelOrder::new(self.n, 2.0 * self.s - 1.0).log_branch()
    }
}

/// The order `τ` of `F_τ`, tagged with whether the logarithmic branch
/// (`τ - n/2 ∈ {0, 1, 2, ...}`) applies in the ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelOrder {
    tau: f64,
    log_branch: bool,
}

impl KernelOrder {
    pub fn new(n: u32, tau: f64) -> Self {
        let d = tau - 0.5 * n as f64;
        Self {
            tau,
            log_branch: d >= 0.0 && d == d.floor(),
        }
    }

    /// `τ = 2s - 1`, the order of the leading kernel.
    pub fn leading(p: &ProblemParams) -> Self {
        Self::new(p.n, 2.0 * p.s - 1.0)
    }

    /// `τ = s - 1`, the order paired with the eigenvalue term.
    pub fn trailing(p: &ProblemParams) -> Self {
        Self::new(p.n, p.s - 1.0)
    }

    /// `τ = -s`, the order of the Riesz kernel of `(-Δ)^s` itself.
    pub fn riesz(p: &ProblemParams) -> Self {
        Self::new(p.n, -p.s)
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn log_branch(&self) -> bool {
        self.log_branch
    }
}

/// Signed log of `κ(n,τ)`: `(ln|κ|, sign κ)`.
fn ln_kappa_signed(n: u32, tau: f64) -> Result<(f64, f64)> {
    if KernelOrder::new(n, tau).log_branch {
        return Err(Error::LogBranch { n, tau });
    }
    let half_n = 0.5 * n as f64;
    let (ln_num, sign) = specfun::ln_gamma_signed(half_n - tau)?;
    let (ln_den, _) = specfun::ln_gamma_signed(tau)?;
    let ln = ln_num - tau * 4f64.ln() - half_n * PI.ln() - ln_den;
    Ok((ln, sign))
}

/// `κ(n,τ) = Γ(n/2 - τ) / (4^τ π^{n/2} |Γ(τ)|)`.
pub fn kappa(n: u32, tau: f64) -> Result<f64> {
    let (ln, sign) = ln_kappa_signed(n, tau)?;
    Ok(sign * ln.exp())
}

/// Prefactor of `r^{2τ-n} ln r` on the logarithmic branch.
fn log_branch_constant(n: u32, tau: f64) -> Result<f64> {
    let m = tau - 0.5 * n as f64;
    let parity = if (m as i64) % 2 == 0 { -1.0 } else { 1.0 };
    let g1 = specfun::gamma(1.0 + m)?;
    let g2 = specfun::gamma(tau)?;
    Ok(parity * 2f64.powf(1.0 - 2.0 * tau) * PI.powf(-0.5 * n as f64) / (g1 * g2))
}

/// `F_τ` at any point of norm `r > 0`.
pub fn fundamental(params: &ProblemParams, order: &KernelOrder, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain {
            func: "fundamental",
            detail: format!("radius {r} is not positive"),
        });
    }
    let expo = 2.0 * order.tau - params.n as f64;
    if order.log_branch {
        let c = log_branch_constant(params.n, order.tau)?;
        Ok(c * r.powf(expo) * r.ln())
    } else {
        Ok(kappa(params.n, order.tau)? * r.powf(expo))
    }
}

fn check_radii(x: f64, y: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite() && y >= 0.0 && y.is_finite()) {
        return Err(Error::Domain {
            func: "j_tau",
            detail: format!("radii ({x}, {y}) must be finite and nonnegative"),
        });
    }
    Ok(())
}

/// Whether `J_τ(x;x)` is finite: the kernel singularity `|z|^{2τ-n}` must
/// be integrable on a hypersurface, which happens exactly for `τ > 1/2`.
fn diagonal_converges(order: &KernelOrder) -> bool {
    !order.log_branch && order.tau > 0.5
}

/// Spherical mean `J_τ(x e₁; y e₁)` of `F_τ(· - y e₁)` over `∂B_x`.
///
/// For `n = 1` this is the two-point average at `±x`. For `n ≥ 2` the mean
/// has the closed form
/// `κ(n,τ) m^{2τ-n} ₂F₁(n/2 - τ, 1 - τ; n/2 | (min(x,y)/m)²)`, `m = max(x,y)`,
/// which degenerates to `F_τ(y)` at `x = 0`.
pub fn j_tau(params: &ProblemParams, order: &KernelOrder, x: f64, y: f64) -> Result<f64> {
    check_radii(x, y)?;
    if x == y && !diagonal_converges(order) {
        return Err(Error::Coincidence { x, y });
    }
    if params.n == 1 {
        let near = (x - y).abs();
        let far = x + y;
        let f_near = if near == 0.0 {
            0.0 // 2τ - 1 > 0 here, so F_τ vanishes at the origin
        } else {
            fundamental(params, order, near)?
        };
        return Ok(0.5 * (f_near + fundamental(params, order, far)?));
    }
    let m = x.max(y);
    let ratio = x.min(y) / m;
    let half_n = params.half_n();
    let tau = order.tau;
    let hyp = specfun::hyp2f1_abcz(half_n - tau, 1.0 - tau, half_n, ratio * ratio)?;
    Ok(kappa(params.n, tau)? * m.powf(2.0 * tau - params.n as f64) * hyp)
}

/// Evaluates `J_τ(x e₁; y e₁)` for many radius pairs with fixed `(n, τ)`,
/// reusing hypergeometric coefficients between calls.
#[derive(Debug, Clone)]
pub struct JTauEvaluator {
    params: ProblemParams,
    order: KernelOrder,
    kappa: f64,
    series: Option<Hyp2f1Series>,
}

impl JTauEvaluator {
    pub fn new(params: ProblemParams, order: KernelOrder) -> Result<Self> {
        let kappa = if order.log_branch {
            f64::NAN
        } else {
            kappa(params.n, order.tau)?
        };
        let series = if params.n >= 2 {
            let h = params.half_n();
            Some(Hyp2f1Series::new(h - order.tau, 1.0 - order.tau, h)?)
        } else {
            None
        };
        Ok(Self {
            params,
            order,
            kappa,
            series,
        })
    }

    pub fn eval(&mut self, x: f64, y: f64) -> Result<f64> {
        let Some(series) = self.series.as_mut() else {
            return j_tau(&self.params, &self.order, x, y);
        };
        check_radii(x, y)?;
        if x == y && !diagonal_converges(&self.order) {
            return Err(Error::Coincidence { x, y });
        }
        let m = x.max(y);
        let ratio = x.min(y) / m;
        let expo = 2.0 * self.order.tau - self.params.n as f64;
        Ok(self.kappa * m.powf(expo) * series.eval(ratio * ratio)?)
    }
}

/// `γ(n,s) = Γ(n/2) / (π^{n/2} Γ(s) Γ(1-s))`.
pub fn poisson_constant(params: &ProblemParams) -> f64 {
    let h = params.half_n();
    let ln = specfun::log_gamma(h).expect("n/2 > 0")
        - h * PI.ln()
        - specfun::log_gamma(params.s).expect("s > 0")
        - specfun::log_gamma(1.0 - params.s).expect("1 - s > 0");
    ln.exp()
}

/// Surface area `|S^{n-1}| = 2π^{n/2}/Γ(n/2)` of the unit sphere in `ℝⁿ`
/// (equal to 2 for `n = 1`, counting the two points `±1`).
pub fn unit_sphere_area(n: u32) -> f64 {
    let h = 0.5 * n as f64;
    2.0 * (h * PI.ln() - specfun::log_gamma(h).expect("n/2 > 0")).exp()
}

/// Poisson kernel from radial data: `|x| < 1 < |y|` and `|x - y|`.
pub fn poisson_kernel_radial(
    params: &ProblemParams,
    x_norm: f64,
    y_norm: f64,
    dist: f64,
) -> Result<f64> {
    if !(x_norm < 1.0 && y_norm > 1.0) {
        return Err(Error::Boundary { x_norm, y_norm });
    }
    let s = params.s;
    let ln = s * (1.0 - x_norm * x_norm).ln()
        - params.n as f64 * dist.ln()
        - s * (y_norm * y_norm - 1.0).ln();
    Ok(poisson_constant(params) * ln.exp())
}

/// Nonlocal Poisson kernel
/// `P_s(x,y) = γ(n,s) (1-|x|²)^s / (|x-y|^n (|y|²-1)^s)`, `|x| < 1 < |y|`.
pub fn poisson_kernel(params: &ProblemParams, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != params.n as usize || y.len() != params.n as usize {
        return Err(Error::InvalidParams(format!(
            "points must have {} coordinates, got {} and {}",
            params.n,
            x.len(),
            y.len()
        )));
    }
    let norm = |v: &[f64]| v.iter().map(|c| c * c).sum::<f64>().sqrt();
    let dist = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    poisson_kernel_radial(params, norm(x), norm(y), dist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn params_validate() {
        assert!(ProblemParams::new(0, 0.7).is_err());
        assert!(ProblemParams::new(2, 0.5).is_err());
        assert!(ProblemParams::new(2, 1.0).is_err());
        assert!(ProblemParams::new(2, 0.99).is_ok());
    }

    #[test]
    fn log_branch_only_at_one_three_quarters() {
        assert!(ProblemParams::new(1, 0.75).unwrap().is_log_case());
        for n in 1..20 {
            for k in 1..50 {
                let s = 0.5 + k as f64 / 100.0;
                let p = ProblemParams::new(n, s).unwrap();
                for o in [
                    KernelOrder::leading(&p),
                    KernelOrder::trailing(&p),
                    KernelOrder::riesz(&p),
                ] {
                    assert_eq!(o.log_branch(), n == 1 && s == 0.75 && o.tau() == 0.5);
                }
            }
        }
    }

    #[test]
    fn kappa_three_half() {
        let v = kappa(3, 0.5).unwrap();
        assert!(close(v, 1.0 / (2.0 * PI * PI), 1e-14));
    }

    #[test]
    fn kappa_uses_absolute_gamma() {
        // τ = -3/4: Γ(τ) < 0 but κ stays positive
        let g = specfun::gamma(-0.75).unwrap();
        assert!(g < 0.0);
        let expected = specfun::gamma(1.25).unwrap() * 4f64.powf(0.75) / (PI.sqrt() * g.abs());
        assert!(close(kappa(1, -0.75).unwrap(), expected, 1e-13));
    }

    #[test]
    fn kappa_log_branch_is_error() {
        assert!(matches!(kappa(1, 0.5), Err(Error::LogBranch { .. })));
        assert!(matches!(kappa(2, 1.0), Err(Error::LogBranch { .. })));
    }

    #[test]
    fn log_fundamental_in_one_dimension() {
        let p = ProblemParams::new(1, 0.75).unwrap();
        let o = KernelOrder::leading(&p);
        assert!(o.log_branch());
        for r in [0.1, 0.5, 2.0, 7.0] {
            let v = fundamental(&p, &o, r).unwrap();
            assert!(close(v, -r.ln() / PI, 1e-14), "r={r}");
        }
        assert_eq!(fundamental(&p, &o, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn power_fundamental() {
        let p = ProblemParams::new(2, 0.65).unwrap();
        let o = KernelOrder::leading(&p); // τ = 0.3
        let v = fundamental(&p, &o, 0.5).unwrap();
        let k = specfun::gamma(0.7).unwrap() / (4f64.powf(0.3) * PI * specfun::gamma(0.3).unwrap());
        assert!(close(v, k * 0.5f64.powf(-1.4), 1e-13));
    }

    #[test]
    fn j_tau_log_case_closed_form() {
        let p = ProblemParams::new(1, 0.75).unwrap();
        let o = KernelOrder::leading(&p);
        let v = j_tau(&p, &o, 0.5, 0.2).unwrap();
        let expected = -(0.25f64 - 0.04).abs().ln() / (2.0 * PI);
        assert!(close(v, expected, 1e-14));
        assert!(matches!(
            j_tau(&p, &o, 0.3, 0.3),
            Err(Error::Coincidence { .. })
        ));
    }

    #[test]
    fn j_tau_diagonal_depends_on_order() {
        let p = ProblemParams::new(3, 0.7).unwrap();
        assert!(j_tau(&p, &KernelOrder::leading(&p), 0.4, 0.4).is_err());
        let q = ProblemParams::new(3, 0.85).unwrap();
        let on = j_tau(&q, &KernelOrder::leading(&q), 0.4, 0.4).unwrap();
        // elementary ℝ³ mean of |z - y|^p over ∂B_r at y = r: (2r)^{p+2} / (2r²(p+2))
        let pw: f64 = 2.0 * (2.0 * 0.85 - 1.0) - 3.0;
        let mean = (0.8f64).powf(pw + 2.0) / (2.0 * 0.16 * (pw + 2.0));
        assert!(close(on, kappa(3, 0.7).unwrap() * mean, 1e-12));
    }

    #[test]
    fn j_tau_three_dimensions_matches_elementary_mean() {
        // in ℝ³ the mean of |z - y|^p over ∂B_r is
        // ((r+y)^{p+2} - |r-y|^{p+2}) / (2 r y (p+2))
        let p = ProblemParams::new(3, 0.8).unwrap();
        let o = KernelOrder::leading(&p);
        let pw = 2.0 * o.tau() - 3.0;
        let (r, y): (f64, f64) = (0.6, 0.9);
        let mean = ((r + y).powf(pw + 2.0) - (y - r).powf(pw + 2.0)) / (2.0 * r * y * (pw + 2.0));
        let expected = kappa(3, o.tau()).unwrap() * mean;
        assert!(close(j_tau(&p, &o, r, y).unwrap(), expected, 1e-12));
        assert!(close(j_tau(&p, &o, y, r).unwrap(), expected, 1e-12));
    }

    #[test]
    fn j_tau_at_origin_is_fundamental() {
        let p = ProblemParams::new(4, 0.6).unwrap();
        for o in [KernelOrder::leading(&p), KernelOrder::trailing(&p)] {
            let a = j_tau(&p, &o, 0.0, 0.7).unwrap();
            let b = fundamental(&p, &o, 0.7).unwrap();
            assert!(close(a, b, 1e-14));
            let a = j_tau(&p, &o, 0.7, 0.0).unwrap();
            assert!(close(a, b, 1e-14));
        }
    }

    #[test]
    fn evaluator_matches_free_function() {
        let p = ProblemParams::new(5, 0.9).unwrap();
        let o = KernelOrder::leading(&p);
        let mut ev = JTauEvaluator::new(p, o).unwrap();
        for (x, y) in [(0.1, 1.0), (0.5, 1.0), (0.95, 1.0), (0.3, 0.0)] {
            assert!(close(
                ev.eval(x, y).unwrap(),
                j_tau(&p, &o, x, y).unwrap(),
                1e-13
            ));
        }
    }

    #[test]
    fn poisson_kernel_three_quarters() {
        let p = ProblemParams::new(1, 0.75).unwrap();
        let v = poisson_kernel(&p, &[0.0], &[2.0]).unwrap();
        let expected = 2f64.sqrt() / (2.0 * PI) / (2.0 * 3f64.powf(0.75));
        assert!(close(v, expected, 1e-14));
    }

    #[test]
    fn poisson_kernel_rotation_invariant_at_origin() {
        let p = ProblemParams::new(3, 0.6).unwrap();
        let a = poisson_kernel(&p, &[0.0; 3], &[1.5, 0.0, 0.0]).unwrap();
        let c = 1.5 / 3f64.sqrt();
        let b = poisson_kernel(&p, &[0.0; 3], &[c, -c, c]).unwrap();
        assert!(close(a, b, 1e-14));
    }

    #[test]
    fn poisson_kernel_boundary_error() {
        let p = ProblemParams::new(2, 0.6).unwrap();
        assert!(matches!(
            poisson_kernel(&p, &[1.0, 0.0], &[2.0, 0.0]),
            Err(Error::Boundary { .. })
        ));
        assert!(poisson_kernel(&p, &[0.0], &[2.0, 0.0]).is_err());
    }

    #[test]
    fn sphere_area_small_dimensions() {
        assert!(close(unit_sphere_area(1), 2.0, 1e-15));
        assert!(close(unit_sphere_area(2), 2.0 * PI, 1e-15));
        assert!(close(unit_sphere_area(3), 4.0 * PI, 1e-15));
    }
}
