//! Upper bound `Λ(n,s)` for the first Dirichlet eigenvalue of `(-Δ)^s` on
//! the unit ball, obtained by using the torsion function
//! `u₁(x) = κ_{n,s}(1-|x|²)^s₊` as a Rayleigh-quotient trial function.
//!
//! Every Gamma ratio is evaluated as a difference of log-Gammas, so the
//! bound stays finite well past the dimension where `Γ(1+2s+n/2)` overflows.

use std::f64::consts::PI;

use serde::Serialize;

use crate::kernels::ProblemParams;
use crate::specfun::log_gamma;

/// `Λ(n,s)` together with the parameters it was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenBound {
    pub lambda_upper: f64,
    pub n: u32,
    pub s: f64,
}

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("argument is positive for valid parameters")
}

/// `ln Λ(n,s)`.
pub fn ln_lambda_upper(params: &ProblemParams) -> f64 {
    let (s, h) = (params.s(), params.half_n());
    s * 4f64.ln() + 2.0 * lg(1.0 + s) + lg(1.0 + 2.0 * s + h)
        - (s + h).ln()
        - lg(h)
        - lg(1.0 + 2.0 * s)
}

/// `Λ(n,s) = 4^s Γ(1+s)² Γ(1+2s+n/2) / ((s+n/2) Γ(n/2) Γ(1+2s))`.
pub fn lambda_upper(params: &ProblemParams) -> EigenBound {
    EigenBound {
        lambda_upper: ln_lambda_upper(params).exp(),
        n: params.n(),
        s: params.s(),
    }
}

/// `ln κ_{n,s}`.
pub fn ln_torsion_constant(params: &ProblemParams) -> f64 {
    let (s, h) = (params.s(), params.half_n());
    lg(h) - s * 4f64.ln() - lg(1.0 + s) - lg(s + h)
}

/// `κ_{n,s} = Γ(n/2) 4^{-s} / (Γ(1+s) Γ(s+n/2))`, the constant making
/// `κ_{n,s}(1-|x|²)^s₊` solve `(-Δ)^s u = 1` in the unit ball.
pub fn torsion_constant(params: &ProblemParams) -> f64 {
    ln_torsion_constant(params).exp()
}

/// `Λ(n,s)` written as
/// `κ_{n,s}^{-1} Γ(1+s) Γ(1+2s+n/2) / (Γ(1+2s) Γ(1+s+n/2))`.
pub fn lambda_via_torsion(params: &ProblemParams) -> f64 {
    let (s, h) = (params.s(), params.half_n());
    (-ln_torsion_constant(params) + lg(1.0 + s) + lg(1.0 + 2.0 * s + h)
        - lg(1.0 + 2.0 * s)
        - lg(1.0 + s + h))
    .exp()
}

/// Rayleigh numerator `∫ u₁ = κ π^{n/2} Γ(1+s) / Γ(1+s+n/2)`, which equals
/// `[u₁]²_s` because `(-Δ)^s u₁ = 1`.
pub fn rayleigh_numerator(params: &ProblemParams) -> f64 {
    let (s, h) = (params.s(), params.half_n());
    (ln_torsion_constant(params) + h * PI.ln() + lg(1.0 + s) - lg(1.0 + s + h)).exp()
}

/// Rayleigh denominator `‖u₁‖²₂ = κ² π^{n/2} Γ(1+2s) / Γ(1+2s+n/2)`.
pub fn rayleigh_denominator(params: &ProblemParams) -> f64 {
    let (s, h) = (params.s(), params.half_n());
    (2.0 * ln_torsion_constant(params) + h * PI.ln() + lg(1.0 + 2.0 * s) - lg(1.0 + 2.0 * s + h))
        .exp()
}

/// The four equal expressions for `Λ(1,s)`, from the general formula at
/// `n = 1` down to `Γ(1+s) Γ(3/2+2s) / Γ(3/2+s)`.
pub fn lambda_one_d_forms(s: f64) -> [f64; 4] {
    let p = ProblemParams::new(1, s).expect("s in (1/2, 1)");
    let first = lambda_upper(&p).lambda_upper;
    let second = (s.ln() + s * 4f64.ln() + 2.0 * lg(s) + lg(1.5 + 2.0 * s)
        - 0.5 * PI.ln()
        - (1.0 + 2.0 * s).ln()
        - lg(2.0 * s))
    .exp();
    let third = (2.0 * s).ln() + lg(s) + lg(1.5 + 2.0 * s) - (1.0 + 2.0 * s).ln() - lg(0.5 + s);
    let fourth = lg(1.0 + s) + lg(1.5 + 2.0 * s) - lg(1.5 + s);
    [first, second, third.exp(), fourth.exp()]
}
