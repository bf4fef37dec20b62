use std::sync::Arc;

use maxfun::{MaxFunction, MaxFunError, ScalarFunction, Side};

use crate::error::CounterexError;
use crate::function::CounterexampleFunction;
use crate::slopes::SlopeKind;

/// `f_1` (or its reflection `f_2`) viewed through the max-function API.
/// Below the materialized grid floor the analytic tail `-t^2` stands in for
/// the unmaterialized pieces; the deviation there is bounded by `t^4`-scale
/// terms, far below double rounding for the default grid depth.
struct CounterexMember {
    f: Arc<CounterexampleFunction>,
    reflected: bool,
}

impl CounterexMember {
    fn arg(&self, t: f64) -> f64 {
        if self.reflected {
            -t
        } else {
            t
        }
    }

    fn chain_sign(&self, order: u32) -> f64 {
        if self.reflected && order % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

impl ScalarFunction for CounterexMember {
    fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn eval(&self, t: f64) -> f64 {
        let u = self.arg(t);
        self.f.eval_f(u, 0).unwrap_or(-u * u)
    }

    fn deriv_sided(&self, t: f64, order: u32, _side: Side) -> Result<f64, MaxFunError> {
        let u = self.arg(t);
        match self.f.eval_f(u, order) {
            Ok(v) => Ok(self.chain_sign(order) * v),
            Err(CounterexError::Resolution { .. }) => {
                let tail = match order {
                    0 => -u * u,
                    1 => -2.0 * u,
                    2 => -2.0,
                    _ => 0.0,
                };
                Ok(self.chain_sign(order) * tail)
            }
            Err(CounterexError::Order { order, max }) => Err(MaxFunError::Capability {
                point: t,
                order,
                reason: format!("construction is C^{max} only"),
            }),
            Err(e) => Err(MaxFunError::argument(e.to_string())),
        }
    }

    fn smoothness_class(&self) -> u32 {
        self.f.contact_order()
    }
}

/// The pair `(f_1, f_2)` as a `MaxFunction` on `[-1, 1]`.
pub fn counterexample_max_function(
    slopes: SlopeKind,
    k_max: u32,
) -> Result<MaxFunction, CounterexError> {
    let f = Arc::new(CounterexampleFunction::new(slopes, k_max)?);
    let members: Vec<Arc<dyn ScalarFunction>> = vec![
        Arc::new(CounterexMember {
            f: Arc::clone(&f),
            reflected: false,
        }),
        Arc::new(CounterexMember {
            f,
            reflected: true,
        }),
    ];
    MaxFunction::new(members, (-1.0, 1.0)).map_err(|e| CounterexError::argument(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossings_activate_both_members() {
        let f = counterexample_max_function(SlopeKind::AppendixA, 40).unwrap();
        let grid = crate::DyadicGrid::new(40);
        for k in [2u32, 8, 14] {
            let tk = grid.midpoint(k);
            let gamma = f.value(tk).unwrap();
            let a = f.active_set(tk, maxfun::default_active_tol(gamma)).unwrap();
            assert_eq!(a.indices, vec![1, 2], "k = {k}");
        }
    }

    #[test]
    fn stationary_at_zero_with_quadratic_envelope() {
        let f = counterexample_max_function(SlopeKind::AppendixA, 40).unwrap();
        let sched: Vec<f64> = (1..=30).map(|i| (-(i as f64)).exp2()).collect();
        let rep = f.stationarity_check(0.0, &sched, 1e-3).unwrap();
        assert!(rep.converges_to_zero);
        for q in &rep.fd_quotients {
            assert!(q.forward.abs() <= 2.0 * q.step);
            assert!(q.backward.abs() <= 2.0 * q.step);
        }
    }

    #[test]
    fn expansion_order_at_least_two() {
        let f = counterexample_max_function(SlopeKind::AppendixA, 40).unwrap();
        let grid: Vec<f64> = (4..=20)
            .flat_map(|i| {
                let e = (-(i as f64)).exp2();
                [e, -e]
            })
            .collect();
        let rep = f.expansion_residual(0.0, &grid).unwrap();
        assert!(
            rep.fitted_order >= 2.0 - 0.3 || rep.fitted_order.is_infinite(),
            "order {}",
            rep.fitted_order
        );
    }
}
