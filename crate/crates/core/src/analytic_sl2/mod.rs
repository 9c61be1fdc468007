//! Numerical model of the contraction for `G = SL(2,ℂ)`.
//!
//! `K = SU(2)`, `A = exp 𝔞` with `𝔞 = ℝ·diag(1, -1)`, `N` upper unipotent.
//! A principal series is labelled by `σ ∈ ℤ` (the `M`-character
//! `diag(e^{iθ}, e^{-iθ}) ↦ e^{iσθ}`) and `ν ∈ ℝ`.

use std::sync::OnceLock;

use thiserror::Error;

pub mod coefficients;
pub mod experiment;
pub mod iwasawa;
pub mod quadrature;
pub mod scenario;
pub mod sections;
pub mod su2;

pub use coefficients::{key_property_probe, motion_limit_coeff, motion_rep_coeff, scaled_matrix_coeff, Estimate, ProbeResult};
pub use experiment::{convergence_experiment, ConvergenceReport, ConvergenceRow};
pub use iwasawa::{iwasawa, IwasawaFactors};
pub use scenario::{shipped_scenarios, Orders, Sl2Scenario};
pub use su2::{KFinite, Mat2, C64};

/// Constants of the group in the `(x, z)` coordinates.
pub struct GroupModel;

impl GroupModel {
    /// `dim_ℝ 𝔞 + dim_ℝ 𝔫`.
    pub const D: i32 = 3;
    /// `ρ(diag(x, -x)) = RHO · x`.
    pub const RHO: f64 = 2.0;
    /// `dX dY = S_JACOBIAN · dx d²(z/2)` in ellipsoidal coordinates.
    pub const S_JACOBIAN: f64 = 4.0;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Sl2Error {
    #[error("matrix is not in SL(2,C): |det| = {det}")]
    NotUnimodular { det: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown section {0:?}")]
    UnknownSection(String),
    #[error("{what} did not converge: |delta| = {delta:e} > tol {tol:e}")]
    QuadratureUnconverged { what: String, delta: f64, tol: f64 },
}

/// Worker pool sized by `MACKEY_FIELD_THREADS` (unset or 0: one per core).
pub(crate) fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let n = std::env::var("MACKEY_FIELD_THREADS").ok().and_then(|v| v.parse().ok()).unwrap_or(0);
        rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
    })
}
