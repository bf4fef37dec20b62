use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::CounterexError;
use crate::grid::DyadicGrid;
use crate::piece::{closed_form_coeffs, solve_pk, ClosedFormVariant, PkPolynomial};
use crate::rat::int;
use crate::slopes::SlopeKind;

/// The piecewise function `f_1`: the analytic tail `-t^2` on `[-1, 0]` and
/// one polynomial piece per dyadic interval `[l_{k+1}, l_k]` on `(0, 1]`.
/// Pieces are materialized eagerly at construction, so evaluation is pure.
#[derive(Debug, Clone)]
pub struct CounterexampleFunction {
    grid: DyadicGrid,
    slopes: SlopeKind,
    pieces: Vec<PkPolynomial>,
}

pub const DEFAULT_K_MAX: u32 = 40;

impl CounterexampleFunction {
    pub fn new(slopes: SlopeKind, k_max: u32) -> Result<Self, CounterexError> {
        let contact = slopes.contact_order();
        let mut pieces = Vec::with_capacity(k_max as usize + 1);
        for k in 0..=k_max {
            let piece = match slopes {
                SlopeKind::AppendixA => closed_form_coeffs(k, ClosedFormVariant::AppendixA),
                SlopeKind::AppendixB => closed_form_coeffs(k, ClosedFormVariant::AppendixB),
                _ => solve_pk(k, slopes.slope_exact(k), contact)?,
            };
            pieces.push(piece);
        }
        Ok(CounterexampleFunction {
            grid: DyadicGrid::new(k_max),
            slopes,
            pieces,
        })
    }

    pub fn grid(&self) -> &DyadicGrid {
        &self.grid
    }

    pub fn slopes(&self) -> SlopeKind {
        self.slopes
    }

    pub fn contact_order(&self) -> u32 {
        self.slopes.contact_order()
    }

    pub fn piece(&self, k: u32) -> &PkPolynomial {
        &self.pieces[k as usize]
    }

    /// Order-`0..=q` derivative of `f_1` at `t`. At breakpoints the piece on
    /// the right is used; at `t = 0` the left-tail closed form applies.
    pub fn eval_f(&self, t: f64, order: u32) -> Result<f64, CounterexError> {
        if !(-1.0..=1.0).contains(&t) {
            return Err(CounterexError::Domain { point: t });
        }
        if order > self.contact_order() {
            return Err(CounterexError::Order {
                order,
                max: self.contact_order(),
            });
        }
        if t <= 0.0 {
            return Ok(tail_deriv(t, order));
        }
        match self.grid.piece_for(t) {
            Some(k) => Ok(self.piece(k).eval_deriv(t, order)),
            None => Err(CounterexError::Resolution {
                point: t,
                floor: self.grid.k_max + 1,
            }),
        }
    }

    /// Exact rational evaluation of `f_1`; the oracle path for tests probing
    /// magnitudes far below double rounding.
    pub fn eval_f_exact(&self, t: &BigRational, order: u32) -> Result<BigRational, CounterexError> {
        let tf = t.to_f64().unwrap_or(f64::NAN);
        if !(-1.0..=1.0).contains(&tf) {
            return Err(CounterexError::Domain { point: tf });
        }
        if order > self.contact_order() {
            return Err(CounterexError::Order {
                order,
                max: self.contact_order(),
            });
        }
        if !t.is_positive() {
            return Ok(match order {
                0 => -(t * t),
                1 => int(-2) * t,
                2 => int(-2),
                _ => BigRational::zero(),
            });
        }
        // Smallest k with t >= l_{k+1}; breakpoints then fall in the
        // right-hand piece automatically.
        let mut k = 0u32;
        while *t < self.grid.breakpoint_exact(k + 1) {
            k += 1;
            if k > self.grid.k_max {
                return Err(CounterexError::Resolution {
                    point: tf,
                    floor: self.grid.k_max + 1,
                });
            }
        }
        Ok(self.piece(k).eval_deriv_exact(t, order))
    }

    /// `f_max(t) = max(f_1(t), f_1(-t))`; an even function of `t`.
    pub fn eval_fmax(&self, t: f64) -> Result<f64, CounterexError> {
        let a = self.eval_f(t, 0)?;
        let b = self.eval_f(-t, 0)?;
        Ok(a.max(b))
    }

    pub fn eval_fmax_exact(&self, t: &BigRational) -> Result<BigRational, CounterexError> {
        let a = self.eval_f_exact(t, 0)?;
        let b = self.eval_f_exact(&(-t), 0)?;
        Ok(if a >= b { a } else { b })
    }

    /// Jump of the one-sided derivatives of `f_max` at the crossing point
    /// `t_k` (right minus left): `(s_k - 1) * 2 t_k`.
    pub fn kink_gap(&self, k: u32) -> f64 {
        (self.slopes.slope(k) - 1.0) * 2.0 * self.grid.midpoint(k)
    }
}

fn tail_deriv(t: f64, order: u32) -> f64 {
    match order {
        0 => -t * t,
        1 => -2.0 * t,
        2 => -2.0,
        _ => 0.0,
    }
}
