//! The radius `x_*(n,s)` below which `J_{2s-1}(x e₁; 0) ≥ J_{2s-1}(x e₁; e₁)`.

use crate::kernels::ProblemParams;

/// `x_*(n,s)`: exactly `2/3` at `(n, s) = (1, 3/4)`, otherwise
/// `1 / (1 + (2 - 2^e)^{1/e})` with `e = 4s - 2 - n`.
///
/// The power is evaluated as `exp(ln(1 - (2^e - 1)) / e)` with `expm1` and
/// `ln_1p`, which stays accurate as `e → 0` (where the limit is `2/3`).
pub fn x_star(params: &ProblemParams) -> f64 {
    if params.is_log_case() {
        return 2.0 / 3.0;
    }
    let e = 4.0 * params.s() - 2.0 - params.n() as f64;
    let ln_base = (-(e * std::f64::consts::LN_2).exp_m1()).ln_1p();
    1.0 / (1.0 + (ln_base / e).exp())
}
