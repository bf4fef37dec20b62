use std::sync::Arc;

use eigfamily::{
    empirical_order, EigError, ExtremalFunction, ExtremalKind, HermitianFamily, IterationRecord,
    SolveReport, SolveStatus,
};

use crate::error::SolverError;
use crate::hinf::omega_from_u;
use crate::levelset::{levelset_maximize, LevelSetOptions};
use crate::lti::LtiSystem;

pub const DEFAULT_TOL: f64 = 1e-6;
const MAX_DOUBLINGS: u32 = 60;
const MAX_OUTER: usize = 200;

/// Outcome of the passivity-margin root-find on `gamma`.
#[derive(Debug, Clone)]
pub struct PassivityResult {
    /// The shift `Xi` with `|gamma(Xi)| <= tol`.
    pub margin: f64,
    pub gamma_at_margin: f64,
    pub gamma_at_zero: f64,
    /// Frequency attaining the inner minimum at the margin; infinite when
    /// the infimum is only approached in the limit.
    pub critical_omega: f64,
    /// Sign changes of `gamma` observed across all evaluated shifts; more
    /// than one means the single-root assumption failed.
    pub sign_changes: usize,
    pub report: SolveReport,
}

/// `gamma(xi) = min over omega of lambda_min(G_xi(i omega)* + G_xi(i omega))`,
/// with the `omega -> +-inf` limit `lambda_min(D_xi + D_xi*)` included.
/// Returns the minimum and the attaining frequency. The shifted state matrix
/// may be unstable: the transfer function stays evaluable on the imaginary
/// axis as long as no eigenvalue lies exactly on it, and isolated poles are
/// skipped by the sampler.
pub fn gamma(sys: &LtiSystem, xi: f64, tol_inner: f64) -> Result<(f64, f64), SolverError> {
    let shifted = sys.shifted(xi)?;
    let scale = 1.0 + shifted.a.norm();
    let m = shifted.d.nrows();
    let family = HermitianFamily::Callable {
        n: m,
        f: Arc::new(move |u: f64| {
            let g = if u <= -1.0 || u >= 1.0 {
                shifted.d.clone()
            } else {
                shifted
                    .transfer_eval(omega_from_u(u, scale))
                    .map_err(|e| e.to_string())?
            };
            Ok(g.adjoint() + g)
        }),
    };
    let f = ExtremalFunction::hermitian(family, ExtremalKind::LambdaMin)?;
    let neg = move |u: f64| -> Result<f64, EigError> { f.eval(u).map(|v| -v) };
    let rep = levelset_maximize(&neg, (-1.0, 1.0), &LevelSetOptions::with_tol(tol_inner))?;
    let u = rep.optimizers[0];
    let omega = if rep.status == SolveStatus::EndpointMaximum && u.abs() > 1.0 - 1e-6 {
        f64::INFINITY.copysign(u)
    } else {
        omega_from_u(u.clamp(-1.0, 1.0), scale)
    };
    Ok((-rep.optimum, omega))
}

/// Root-find `gamma(Xi) = 0` by geometric bracket growth from `xi = 0`
/// followed by safeguarded secant steps inside the sign-change bracket.
pub fn passivity_margin(sys: &LtiSystem, tol: f64) -> Result<PassivityResult, SolverError> {
    let (_, m, p) = sys.dims();
    if m != p {
        return Err(SolverError::argument("passivity needs a square transfer matrix"));
    }
    if !(tol > 0.0) {
        return Err(SolverError::argument("tol must be positive"));
    }
    let tol_inner = tol / 100.0;

    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut eval = |xi: f64| -> Result<(f64, f64), SolverError> {
        let out = gamma(sys, xi, tol_inner)?;
        samples.push((xi, out.0));
        Ok(out)
    };

    let (g0, _) = eval(0.0)?;
    if g0 <= 0.0 {
        return Err(SolverError::NotStrictlyPassive { gamma0: g0 });
    }

    let mut iterations = Vec::new();
    let mut history = Vec::new();

    // Grow the upper end until gamma changes sign.
    let (mut lo, mut glo) = (0.0, g0);
    let mut hi = 1.0;
    let mut ghi;
    let mut doublings = 0;
    loop {
        ghi = eval(hi)?.0;
        history.push(hi);
        iterations.push(IterationRecord { level: hi, bracket_width: hi - lo });
        if ghi <= 0.0 {
            break;
        }
        lo = hi;
        glo = ghi;
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_DOUBLINGS {
            return Err(SolverError::argument(
                "gamma never changes sign: no finite passivity margin found",
            ));
        }
    }

    // Safeguarded secant on [lo, hi] with gamma(lo) > 0 >= gamma(hi).
    let (mut xi, mut gxi) = (hi, ghi);
    let mut outer = 0;
    while gxi.abs() > tol && outer < MAX_OUTER {
        outer += 1;
        let denom = ghi - glo;
        let mut next = if denom.abs() > f64::EPSILON * (glo.abs() + ghi.abs()) {
            lo - glo * (hi - lo) / denom
        } else {
            0.5 * (lo + hi)
        };
        let margin = 1e-3 * (hi - lo);
        if !(next > lo + margin && next < hi - margin) {
            next = 0.5 * (lo + hi);
        }
        let gnext = eval(next)?.0;
        if gnext > 0.0 {
            lo = next;
            glo = gnext;
        } else {
            hi = next;
            ghi = gnext;
        }
        xi = next;
        gxi = gnext;
        history.push(xi);
        iterations.push(IterationRecord { level: xi, bracket_width: hi - lo });
        if hi - lo <= f64::EPSILON * (1.0 + hi.abs()) {
            break;
        }
    }

    let (gfinal, critical_omega) = gamma(sys, xi, tol_inner)?;
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    let sign_changes = samples
        .windows(2)
        .filter(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0))
        .count();

    history.push(xi);
    let order = if history.len() >= 4 {
        empirical_order(&history).unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    let status = if gxi.abs() <= tol {
        SolveStatus::Converged
    } else {
        SolveStatus::ToleranceNotReached
    };
    Ok(PassivityResult {
        margin: xi,
        gamma_at_margin: gfinal,
        gamma_at_zero: g0,
        critical_omega,
        sign_changes,
        report: SolveReport {
            optimum: xi,
            optimizers: vec![critical_omega],
            iterations,
            certificates: samples,
            empirical_order: order,
            curvature: f64::NAN,
            status,
        },
    })
}
