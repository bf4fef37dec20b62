use eigfamily::{singular_values_direct, EigError, MatrixFamily, SolveReport, SolveStatus};
use std::sync::Arc;

use crate::error::SolverError;
use crate::levelset::{grid_maximize, levelset_maximize, LevelSetOptions};
use crate::lti::LtiSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    LevelSet,
    Grid,
}

impl std::str::FromStr for Method {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, SolverError> {
        match s {
            "levelset" => Ok(Method::LevelSet),
            "grid" => Ok(Method::Grid),
            other => Err(SolverError::argument(format!("unknown method '{other}'"))),
        }
    }
}

pub const DEFAULT_TOL: f64 = 1e-8;

/// Frequency-axis compactification `omega = scale * tan(pi u / 2)`,
/// `u in [-1, 1]`, with the transfer limit `G(i inf) = D` at the endpoints.
pub fn omega_from_u(u: f64, scale: f64) -> f64 {
    scale * (std::f64::consts::FRAC_PI_2 * u).tan()
}

pub fn u_from_omega(omega: f64, scale: f64) -> f64 {
    (omega / scale).atan() / std::f64::consts::FRAC_PI_2
}

/// The transfer matrix as a matrix family over the compactified frequency
/// variable `u`.
pub fn transfer_family(sys: &LtiSystem, scale: f64) -> MatrixFamily {
    let sys = sys.clone();
    let (_, m, p) = sys.dims();
    MatrixFamily::Callable {
        rows: p,
        cols: m,
        f: Arc::new(move |u: f64| {
            if u <= -1.0 || u >= 1.0 {
                return Ok(sys.d.clone());
            }
            sys.transfer_eval(omega_from_u(u, scale))
                .map_err(|e| e.to_string())
        }),
    }
}

pub fn hinf_norm(sys: &LtiSystem, tol: f64) -> Result<SolveReport, SolverError> {
    hinf_norm_with(sys, tol, Method::LevelSet)
}

/// `max over omega of sigma_max(G(i omega))` for a stable system.
pub fn hinf_norm_with(
    sys: &LtiSystem,
    tol: f64,
    method: Method,
) -> Result<SolveReport, SolverError> {
    if !(tol > 0.0) {
        return Err(SolverError::argument("tol must be positive"));
    }
    sys.require_stable()?;

    // Constant transfer: nothing to search.
    if sys.b.norm() == 0.0 || sys.c.norm() == 0.0 {
        let smax = sys.d.clone().svd(false, false).singular_values.max();
        return Ok(SolveReport {
            optimum: smax,
            optimizers: vec![0.0],
            iterations: Vec::new(),
            certificates: vec![(0.0, smax)],
            empirical_order: f64::NAN,
            curvature: f64::NAN,
            status: SolveStatus::Converged,
        });
    }

    let scale = 1.0 + sys.a.norm();
    let family = transfer_family(sys, scale);
    let g = move |u: f64| -> Result<f64, EigError> {
        singular_values_direct(&family, u).map(|(smax, _)| smax)
    };
    let report = match method {
        Method::LevelSet => levelset_maximize(&g, (-1.0, 1.0), &LevelSetOptions::with_tol(tol))?,
        Method::Grid => grid_maximize(&g, (-1.0, 1.0), 1000, tol)?,
    };
    Ok(map_to_omega(report, scale))
}

fn map_to_omega(mut report: SolveReport, scale: f64) -> SolveReport {
    for u in &mut report.optimizers {
        *u = omega_from_u(u.clamp(-1.0, 1.0), scale);
    }
    for c in &mut report.certificates {
        c.0 = omega_from_u(c.0.clamp(-1.0, 1.0), scale);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn scalar(a: f64, b: f64, c: f64, d: f64) -> LtiSystem {
        let m = |x: f64| DMatrix::from_element(1, 1, Complex64::new(x, 0.0));
        LtiSystem::new(m(a), m(b), m(c), m(d)).unwrap()
    }

    #[test]
    fn first_order_lag_peaks_at_zero() {
        let sys = scalar(-1.0, 1.0, 1.0, 0.0);
        let rep = hinf_norm(&sys, 1e-8).unwrap();
        assert!((rep.optimum - 1.0).abs() <= 1e-8, "{}", rep.optimum);
        assert!(rep.optimizers[0].abs() <= 1e-3);
    }

    #[test]
    fn zero_b_returns_sigma_max_of_d() {
        let sys = scalar(-1.0, 0.0, 1.0, -2.5);
        let rep = hinf_norm(&sys, 1e-8).unwrap();
        assert_eq!(rep.optimum, 2.5);
    }

    #[test]
    fn unstable_system_is_rejected() {
        let sys = scalar(0.5, 1.0, 1.0, 0.0);
        assert!(matches!(hinf_norm(&sys, 1e-8), Err(SolverError::Unstable { .. })));
    }

    #[test]
    fn grid_and_levelset_agree() {
        let sys = crate::lti::random_system(3, 4, 2, 2);
        let a = hinf_norm_with(&sys, 1e-8, Method::LevelSet).unwrap();
        let b = hinf_norm_with(&sys, 1e-8, Method::Grid).unwrap();
        assert!((a.optimum - b.optimum).abs() <= 1e-6 * (1.0 + a.optimum));
    }
}
