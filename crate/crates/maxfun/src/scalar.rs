use std::sync::Arc;

use crate::error::MaxFunError;

/// Two one-sided derivatives at a breakpoint agree when they differ by no
/// more than this; `deriv` then reports the two-sided value.
pub const SIDED_AGREEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A univariate scalar function on a closed interval, with derivatives up to
/// its claimed smoothness class where they exist.
pub trait ScalarFunction: Send + Sync {
    /// Closed interval `[lo, hi]` on which the function is defined.
    fn domain(&self) -> (f64, f64);

    fn eval(&self, t: f64) -> f64;

    /// One-sided derivative of the given order. Order 0 is the value itself.
    fn deriv_sided(&self, t: f64, order: u32, side: Side) -> Result<f64, MaxFunError>;

    /// Two-sided derivative. At points where the one-sided values disagree by
    /// more than [`SIDED_AGREEMENT_TOL`], a capability error is returned.
    fn deriv(&self, t: f64, order: u32) -> Result<f64, MaxFunError> {
        let left = self.deriv_sided(t, order, Side::Left)?;
        let right = self.deriv_sided(t, order, Side::Right)?;
        if (left - right).abs() <= SIDED_AGREEMENT_TOL * (1.0 + left.abs().max(right.abs())) {
            Ok(right)
        } else {
            Err(MaxFunError::Capability {
                point: t,
                order,
                reason: format!("one-sided derivatives disagree ({left} vs {right})"),
            })
        }
    }

    /// Claimed smoothness class `q` (the function is C^q).
    fn smoothness_class(&self) -> u32;

    fn contains(&self, t: f64) -> bool {
        let (lo, hi) = self.domain();
        t >= lo && t <= hi
    }
}

/// Polynomial in the monomial basis; the workhorse for small test families.
#[derive(Debug, Clone)]
pub struct Polynomial {
    coeffs: Vec<f64>,
    domain: (f64, f64),
}

impl Polynomial {
    /// `coeffs[j]` multiplies `t^j`.
    pub fn new(coeffs: Vec<f64>, domain: (f64, f64)) -> Self {
        Polynomial { coeffs, domain }
    }

    fn eval_deriv(&self, t: f64, order: u32) -> f64 {
        let mut acc = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            let j = j as u32;
            if j < order {
                break;
            }
            let mut factor = 1.0;
            for r in 0..order {
                factor *= (j - r) as f64;
            }
            acc = acc * t + c * factor;
        }
        acc
    }
}

impl ScalarFunction for Polynomial {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn eval(&self, t: f64) -> f64 {
        self.eval_deriv(t, 0)
    }

    fn deriv_sided(&self, t: f64, order: u32, _side: Side) -> Result<f64, MaxFunError> {
        Ok(self.eval_deriv(t, order))
    }

    fn smoothness_class(&self) -> u32 {
        u32::MAX
    }
}

type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type SidedFn = Arc<dyn Fn(f64, Side) -> Option<f64> + Send + Sync>;

/// Closure-backed scalar function; derivative closures are optional and may
/// themselves decline at individual points by returning `None`.
#[derive(Clone)]
pub struct ClosureFn {
    domain: (f64, f64),
    value: EvalFn,
    derivs: Vec<SidedFn>,
    class: u32,
}

impl ClosureFn {
    pub fn new(domain: (f64, f64), value: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ClosureFn {
            domain,
            value: Arc::new(value),
            derivs: Vec::new(),
            class: 0,
        }
    }

    /// Append the next derivative order (orders must be pushed in sequence).
    pub fn with_deriv(
        mut self,
        d: impl Fn(f64, Side) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        self.derivs.push(Arc::new(d));
        self
    }

    pub fn with_class(mut self, q: u32) -> Self {
        self.class = q;
        self
    }
}

impl ScalarFunction for ClosureFn {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn eval(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    fn deriv_sided(&self, t: f64, order: u32, side: Side) -> Result<f64, MaxFunError> {
        if order == 0 {
            return Ok(self.eval(t));
        }
        let missing = || MaxFunError::Capability {
            point: t,
            order,
            reason: "no derivative implementation".into(),
        };
        let d = self.derivs.get(order as usize - 1).ok_or_else(missing)?;
        d(t, side).ok_or_else(missing)
    }

    fn smoothness_class(&self) -> u32 {
        self.class
    }
}
