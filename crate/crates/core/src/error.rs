use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: pole at {at}")]
    Pole { func: &'static str, at: f64 },

    #[error("{func}: argument outside domain ({detail})")]
    Domain { func: &'static str, detail: String },

    #[error("{func}: no convergence after {iterations} terms (partial value {partial})")]
    NonConvergence {
        func: &'static str,
        iterations: usize,
        partial: f64,
    },

    #[error("kappa({n}, {tau}) is undefined on the logarithmic branch")]
    LogBranch { n: u32, tau: f64 },

    #[error("J_tau({x}; {y}) diverges on the diagonal")]
    Coincidence { x: f64, y: f64 },

    #[error("point on the unit sphere (|x| = {x_norm}, |y| = {y_norm})")]
    Boundary { x_norm: f64, y_norm: f64 },

    #[error("{func}: singular at s = 3/4")]
    ThreeQuarters { func: &'static str },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("quadrature tolerance not met: estimate {value} with error {error} > {tol}")]
    ToleranceNotMet { value: f64, error: f64, tol: f64 },

    #[error("integrand returned a non-finite value at t = {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),
}

impl Error {
    /// True for errors raised by iterative numerics rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::ToleranceNotMet { .. }
                | Error::NonFiniteIntegrand { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
