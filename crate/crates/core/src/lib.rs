//! Numerical toolkit for the superharmonicity of the first Dirichlet
//! eigenfunction of the fractional Laplacian `(-Δ)^s` on the unit ball,
//! `s ∈ (1/2, 1)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Gamma, log-Gamma, Beta and the Gauss hypergeometric
//!   function `₂F₁` on real arguments.
//! * [`kernels`]: the fundamental solutions `F_τ`, their spherical means
//!   `J_τ`, and the nonlocal Poisson kernel of the ball.
//! * [`eigenbounds`]: the torsion-function upper bound `Λ(n,s)` for the
//!   first eigenvalue.
//! * [`quadoracle`]: adaptive Gauss–Jacobi quadrature used as an
//!   independent check on every closed form.
//! * [`verifier`]: the reduced inequalities and the grid scans that
//!   certify their positivity.

pub mod eigenbounds;
pub mod error;
pub mod kernels;
pub mod quadoracle;
pub mod specfun;
pub mod verifier;

pub use error::{Error, Result};
pub use kernels::{KernelOrder, ProblemParams};
