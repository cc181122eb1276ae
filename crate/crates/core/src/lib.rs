//! # qent
//!
//! Deformed-logarithm calculus, the entropy and divergence families built on
//! it, and a randomized verification engine for the inequality chains and
//! identities that relate them.
//!
//! The crate is organized bottom-up:
//!
//! - [`deformed`] — scalar q-logarithm / q-exponential pair, the biparametric
//!   (r,q) deformation, Hermite–Hadamard ratio bounds, and a Gauss–Legendre
//!   quadrature oracle for the integral representation of ln_q.
//! - [`psi`] — the closed catalog of quasilinear-mean generators ψ (log,
//!   power, q-log, (r,q)-log) with analytic inverses, and the weighted
//!   quasilinear (Kolmogorov–Nagumo) mean.
//! - [`simplex`] — validated strictly-positive probability distributions,
//!   seeded flat-Dirichlet sampling, and the derived distributions used by
//!   the occupancy entropies and mixture inequalities.
//! - [`entropy`] — Shannon, Tsallis, Rényi, quasi-, quasilinear, Wada–Suyari,
//!   biparametric, Arimoto, Fermi–Dirac and Bose–Einstein entropies.
//! - [`divergence`] — KL, Tsallis, Rényi, α-, quasilinear, biparametric (two
//!   kinds), Arimoto, Jeffreys, Jensen–Shannon and Lin divergences.
//! - [`checks`] — every inequality chain / identity as a named, machine
//!   checkable bound chain, plus deterministic seeded verification campaigns.

pub mod checks;
pub mod deformed;
pub mod divergence;
pub mod entropy;
pub mod psi;
pub mod simplex;

pub use deformed::{q_exp, q_log, Classification, MathError, QIndex};
pub use psi::{quasilinear_mean, PsiKernel};
pub use simplex::{DivergencePair, ProbabilityDistribution, SimplexError};
