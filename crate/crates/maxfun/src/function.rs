use std::sync::Arc;

use crate::error::MaxFunError;
use crate::scalar::{ScalarFunction, Side};

/// Default threshold under which finite-difference quotients are considered
/// to have converged to zero.
pub const DEFAULT_STATIONARITY_THRESHOLD: f64 = 1e-3;

/// Pointwise maximum over a finite ordered family of scalar functions.
#[derive(Clone)]
pub struct MaxFunction {
    members: Vec<Arc<dyn ScalarFunction>>,
    domain: (f64, f64),
}

/// Indices (1-based, matching member order) attaining the level `gamma` at
/// `point` within `tolerance`.
#[derive(Debug, Clone)]
pub struct ActiveSet {
    pub point: f64,
    pub gamma: f64,
    pub indices: Vec<usize>,
    pub tolerance: f64,
}

/// Quadratic expansion `gamma + M eps^2` of the max function at a maximizer.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticModel {
    pub center: f64,
    pub gamma: f64,
    pub curvature: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct FdQuotient {
    pub step: f64,
    pub forward: f64,
    pub backward: f64,
}

#[derive(Debug, Clone)]
pub struct StationarityReport {
    pub fd_quotients: Vec<FdQuotient>,
    pub converges_to_zero: bool,
    pub threshold: f64,
}

#[derive(Debug, Clone)]
pub struct ExpansionReport {
    /// `(eps, residual)` pairs; grid entries equal to zero are skipped.
    pub residuals: Vec<(f64, f64)>,
    /// Least-squares slope of log residual vs log |eps|; `f64::INFINITY` when
    /// the model is exact to rounding.
    pub fitted_order: f64,
}

impl MaxFunction {
    pub fn new(
        members: Vec<Arc<dyn ScalarFunction>>,
        domain: (f64, f64),
    ) -> Result<Self, MaxFunError> {
        if members.is_empty() {
            return Err(MaxFunError::argument("family must have at least one member"));
        }
        if domain.0 >= domain.1 {
            return Err(MaxFunError::argument("empty shared domain"));
        }
        for (j, m) in members.iter().enumerate() {
            let (lo, hi) = m.domain();
            if lo > domain.0 || hi < domain.1 {
                return Err(MaxFunError::argument(format!(
                    "member {} domain [{lo}, {hi}] does not contain shared domain",
                    j + 1
                )));
            }
        }
        Ok(MaxFunction { members, domain })
    }

    pub fn members(&self) -> &[Arc<dyn ScalarFunction>] {
        &self.members
    }

    pub fn member(&self, index1: usize) -> &dyn ScalarFunction {
        self.members[index1 - 1].as_ref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn check_domain(&self, t: f64) -> Result<(), MaxFunError> {
        let (lo, hi) = self.domain;
        if t < lo || t > hi || t.is_nan() {
            return Err(MaxFunError::Domain { point: t, lo, hi });
        }
        Ok(())
    }

    /// Value of the max function together with all members attaining it
    /// exactly (floating-point equality of the computed member values).
    pub fn eval_max(&self, t: f64) -> Result<(f64, Vec<usize>), MaxFunError> {
        self.check_domain(t)?;
        let values: Vec<f64> = self.members.iter().map(|m| m.eval(t)).collect();
        let value = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let argmax = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == value)
            .map(|(j, _)| j + 1)
            .collect();
        Ok((value, argmax))
    }

    /// Convenience accessor discarding the argmax indices.
    pub fn value(&self, t: f64) -> Result<f64, MaxFunError> {
        Ok(self.eval_max(t)?.0)
    }

    /// Members within `tol` of the level at `x`.
    pub fn active_set(&self, x: f64, tol: f64) -> Result<ActiveSet, MaxFunError> {
        if tol < 0.0 {
            return Err(MaxFunError::argument("tolerance must be nonnegative"));
        }
        self.check_domain(x)?;
        let (gamma, _) = self.eval_max(x)?;
        let indices = self
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| (m.eval(x) - gamma).abs() <= tol)
            .map(|(j, _)| j + 1)
            .collect();
        Ok(ActiveSet {
            point: x,
            gamma,
            indices,
            tolerance: tol,
        })
    }

    /// Finite-difference quotients `(f_max(x ± eps) - f_max(x)) / (± eps)`
    /// over a strictly decreasing positive step schedule.
    pub fn stationarity_check(
        &self,
        x: f64,
        schedule: &[f64],
        threshold: f64,
    ) -> Result<StationarityReport, MaxFunError> {
        if schedule.is_empty() {
            return Err(MaxFunError::argument("empty step schedule"));
        }
        if schedule.windows(2).any(|w| w[1] >= w[0]) || schedule.iter().any(|&e| e <= 0.0) {
            return Err(MaxFunError::argument(
                "schedule must be strictly decreasing and positive",
            ));
        }
        let f0 = self.value(x)?;
        let (lo, hi) = self.domain;
        let mut fd_quotients = Vec::with_capacity(schedule.len());
        for &eps in schedule {
            let fwd = if x + eps <= hi {
                (self.value(x + eps)? - f0) / eps
            } else {
                f64::NAN
            };
            let bwd = if x - eps >= lo {
                (self.value(x - eps)? - f0) / (-eps)
            } else {
                f64::NAN
            };
            fd_quotients.push(FdQuotient {
                step: eps,
                forward: fwd,
                backward: bwd,
            });
        }
        // Converged iff the quotients at the smallest few steps are all below
        // the threshold in magnitude.
        let window = fd_quotients.len().min(3);
        let converges_to_zero = fd_quotients[fd_quotients.len() - window..].iter().all(|q| {
            let m = q.forward.abs().max(q.backward.abs());
            m.is_finite() && m <= threshold
        });
        Ok(StationarityReport {
            fd_quotients,
            converges_to_zero,
            threshold,
        })
    }

    /// Quadratic model `gamma + M eps^2` with `M = max_j f_j''(x) / 2` over
    /// the active members, using two-sided second derivatives.
    pub fn quadratic_model(&self, x: f64) -> Result<QuadraticModel, MaxFunError> {
        self.quadratic_model_impl(x, None)
    }

    /// Per-side variant for maximizers where the active members only have
    /// one-sided second derivatives (e.g. piecewise members with a breakpoint
    /// at the maximizer itself).
    pub fn quadratic_model_sided(&self, x: f64, side: Side) -> Result<QuadraticModel, MaxFunError> {
        self.quadratic_model_impl(x, Some(side))
    }

    fn quadratic_model_impl(&self, x: f64, side: Option<Side>) -> Result<QuadraticModel, MaxFunError> {
        let active = self.active_set(x, crate::default_active_tol(self.value(x)?))?;
        let mut best = f64::NEG_INFINITY;
        for &j in &active.indices {
            let m = self.member(j);
            let d2 = match side {
                Some(s) => m.deriv_sided(x, 2, s)?,
                None => m.deriv(x, 2)?,
            };
            best = best.max(d2);
        }
        Ok(QuadraticModel {
            center: x,
            gamma: active.gamma,
            curvature: 0.5 * best,
        })
    }

    /// Residuals of the quadratic model over an eps grid and the fitted
    /// log-log order of the residual decay.
    pub fn expansion_residual(
        &self,
        x: f64,
        eps_grid: &[f64],
    ) -> Result<ExpansionReport, MaxFunError> {
        let model = self.quadratic_model(x)?;
        let mut residuals = Vec::new();
        for &eps in eps_grid {
            if eps == 0.0 {
                continue;
            }
            let r = (self.value(x + eps)? - model.gamma - model.curvature * eps * eps).abs();
            residuals.push((eps, r));
        }
        let scale = 1.0 + model.gamma.abs();
        let fitted_order = fit_order(&residuals, 1e-15 * scale);
        Ok(ExpansionReport {
            residuals,
            fitted_order,
        })
    }
}

/// Least-squares slope of log residual vs log |eps| over residuals above the
/// rounding floor; infinity when everything is at the floor.
fn fit_order(residuals: &[(f64, f64)], floor: f64) -> f64 {
    let pts: Vec<(f64, f64)> = residuals
        .iter()
        .filter(|(_, r)| *r > floor)
        .map(|(e, r)| (e.abs().ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::INFINITY;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Polynomial;
    use crate::{builtin_family, default_active_tol, dyadic_schedule, BuiltinFamily};

    fn poly(coeffs: &[f64]) -> Arc<dyn ScalarFunction> {
        Arc::new(Polynomial::new(coeffs.to_vec(), (-10.0, 10.0)))
    }

    fn pair(a: &[f64], b: &[f64]) -> MaxFunction {
        MaxFunction::new(vec![poly(a), poly(b)], (-1.0, 1.0)).unwrap()
    }

    #[test]
    fn eval_max_ties_and_singletons() {
        // {-t^2, -2t^2} at 0: both vanish.
        let f = pair(&[0.0, 0.0, -1.0], &[0.0, 0.0, -2.0]);
        let (v, idx) = f.eval_max(0.0).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(idx, vec![1, 2]);

        let two = builtin_family(BuiltinFamily::TwoPieceC1);
        let (v, idx) = two.eval_max(-1.0).unwrap();
        assert_eq!(v, -1.0);
        assert_eq!(idx, vec![1]);
        let (v, idx) = two.eval_max(1.0).unwrap();
        assert_eq!(v, -2.0);
        assert_eq!(idx, vec![2]);
    }

    #[test]
    fn eval_max_outside_domain() {
        let f = pair(&[0.0], &[1.0]);
        assert!(f.eval_max(2.0).is_err());
    }

    #[test]
    fn active_sets() {
        let two = builtin_family(BuiltinFamily::TwoPieceC1);
        let a = two.active_set(0.0, 1e-12).unwrap();
        assert_eq!(a.indices, vec![1, 2]);
        assert_eq!(a.gamma, 0.0);

        // {-t^2, -2t^2 - 1} at 0: second member strictly below the level.
        let f = pair(&[0.0, 0.0, -1.0], &[-1.0, 0.0, -2.0]);
        let a = f.active_set(0.0, 1e-12).unwrap();
        assert_eq!(a.indices, vec![1]);
        for j in 1..=f.len() {
            if !a.indices.contains(&j) {
                assert!(f.member(j).eval(0.0) < a.gamma - a.tolerance);
            }
        }
    }

    #[test]
    fn stationarity_at_smooth_maximizer() {
        let two = builtin_family(BuiltinFamily::TwoPieceC1);
        let sched: Vec<f64> = (1..=20).map(|i| (-(i as f64)).exp2()).collect();
        let rep = two
            .stationarity_check(0.0, &sched, DEFAULT_STATIONARITY_THRESHOLD)
            .unwrap();
        assert!(rep.converges_to_zero);
    }

    #[test]
    fn stationarity_fails_at_kink_and_nonmaximizer() {
        let negabs = builtin_family(BuiltinFamily::NegAbs);
        let sched = dyadic_schedule();
        let rep = negabs.stationarity_check(0.0, &sched, 1e-3).unwrap();
        assert!(!rep.converges_to_zero);
        for q in &rep.fd_quotients {
            assert!((q.forward + 1.0).abs() < 1e-12);
            assert!((q.backward - 1.0).abs() < 1e-12);
        }

        let ident = MaxFunction::new(vec![poly(&[0.0, 1.0])], (-1.0, 1.0)).unwrap();
        let rep = ident.stationarity_check(0.0, &sched, 1e-3).unwrap();
        assert!(!rep.converges_to_zero);
        assert!((rep.fd_quotients.last().unwrap().forward - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stationarity_rejects_bad_schedules() {
        let f = pair(&[0.0], &[1.0]);
        assert!(f.stationarity_check(0.0, &[], 1e-3).is_err());
        assert!(f.stationarity_check(0.0, &[0.1, 0.2], 1e-3).is_err());
    }

    #[test]
    fn quadratic_models() {
        // Single member -2t^2: M = -2.
        let f = MaxFunction::new(vec![poly(&[0.0, 0.0, -2.0])], (-1.0, 1.0)).unwrap();
        let m = f.quadratic_model(0.0).unwrap();
        assert_eq!(m.curvature, -2.0);

        // {-t^2, -2t^2}: M = max(-2, -4)/2 = -1.
        let f = pair(&[0.0, 0.0, -1.0], &[0.0, 0.0, -2.0]);
        assert_eq!(f.quadratic_model(0.0).unwrap().curvature, -1.0);
    }

    #[test]
    fn two_piece_needs_sided_model() {
        let two = builtin_family(BuiltinFamily::TwoPieceC1);
        // f1 has one-sided second derivatives -2 / -6 at 0, so the two-sided
        // model is unavailable there.
        assert!(two.quadratic_model(0.0).is_err());
        let left = two.quadratic_model_sided(0.0, Side::Left).unwrap();
        assert_eq!(left.curvature, -1.0);
        let right = two.quadratic_model_sided(0.0, Side::Right).unwrap();
        assert_eq!(right.curvature, -2.0);
    }

    #[test]
    fn two_piece_sided_model_matches_brute_force_fit() {
        // Independent oracle: least-squares fit of f_max(eps) ~ c * eps^2 on
        // a left-side grid recovers the left model curvature -1.
        let two = builtin_family(BuiltinFamily::TwoPieceC1);
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 1..=200 {
            let eps = -1e-3 * (i as f64) / 200.0;
            let v = two.value(eps).unwrap();
            num += v * eps * eps;
            den += eps.powi(4);
        }
        let fitted = num / den;
        assert!((fitted - (-1.0)).abs() < 1e-9, "fitted = {fitted}");
    }

    #[test]
    fn expansion_residuals() {
        // Exact model: all residuals vanish.
        let f = MaxFunction::new(vec![poly(&[0.0, 0.0, -2.0])], (-1.0, 1.0)).unwrap();
        let grid: Vec<f64> = (1..=10).map(|i| (-(i as f64)).exp2()).collect();
        let rep = f.expansion_residual(0.0, &grid).unwrap();
        assert!(rep.fitted_order.is_infinite());
        assert!(rep.residuals.iter().all(|(_, r)| *r == 0.0));

        // {-t^2 + t^3, -t^2 - t^3}: residual is exactly |eps|^3.
        let f = pair(&[0.0, 0.0, -1.0, 1.0], &[0.0, 0.0, -1.0, -1.0]);
        let mut grid: Vec<f64> = Vec::new();
        for i in 1..=10 {
            let e = (-(i as f64)).exp2();
            grid.push(e);
            grid.push(-e);
        }
        grid.push(0.0); // skipped entries
        let rep = f.expansion_residual(0.0, &grid).unwrap();
        assert!((rep.fitted_order - 3.0).abs() < 0.2, "{}", rep.fitted_order);
        assert_eq!(rep.residuals.len(), 20);
    }

    #[test]
    fn degenerate_single_member_family() {
        let f = MaxFunction::new(vec![poly(&[1.0, 0.0, -1.0])], (-1.0, 1.0)).unwrap();
        let (v, idx) = f.eval_max(0.5).unwrap();
        assert_eq!(v, 0.75);
        assert_eq!(idx, vec![1]);
        assert_eq!(f.active_set(0.0, 0.0).unwrap().indices, vec![1]);
    }

    #[test]
    fn default_tol_scales_with_level() {
        assert_eq!(default_active_tol(0.0), 1e-10);
        assert_eq!(default_active_tol(-3.0), 4e-10);
    }
}
