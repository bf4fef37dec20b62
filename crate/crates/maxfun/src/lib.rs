//! Pointwise maxima of finite families of univariate scalar functions.
//!
//! A `MaxFunction` holds a finite, ordered family `{f_j}` sharing a closed
//! interval domain and exposes the machinery needed to study `f_max` at
//! candidate maximizers: active sets at a level, finite-difference
//! stationarity checks, quadratic expansion models built from second
//! derivatives of the active members, and residual fits against that model.

mod builtin;
mod error;
mod function;
mod scalar;

pub use builtin::{builtin_family, BuiltinFamily};
pub use error::MaxFunError;
pub use function::{
    ActiveSet, ExpansionReport, FdQuotient, MaxFunction, QuadraticModel, StationarityReport,
    DEFAULT_STATIONARITY_THRESHOLD,
};
pub use scalar::{ClosureFn, Polynomial, ScalarFunction, Side, SIDED_AGREEMENT_TOL};

/// Default active-set tolerance at level `gamma`: `1e-10 * (1 + |gamma|)`.
pub fn default_active_tol(gamma: f64) -> f64 {
    1e-10 * (1.0 + gamma.abs())
}

/// The default finite-difference schedule `2^-1, ..., 2^-40`.
pub fn dyadic_schedule() -> Vec<f64> {
    (1..=40).map(|i| (-(i as f64)).exp2()).collect()
}
