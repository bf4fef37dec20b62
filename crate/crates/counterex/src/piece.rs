use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::CounterexError;
use crate::grid::DyadicGrid;
use crate::linsolve::solve_exact;
use crate::rat::{int, pow2};
use crate::slopes::SlopeKind;

/// Integer constants of the closed-form coefficient table, indexed by degree.
pub const Z: [i64; 10] = [
    4608, -61440, 359424, -1210368, 2585088, -3631104, 3354624, -1966080, 663552, -98304,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    VandermondeSolve,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormVariant {
    /// `c_j = z_j 2^(j-4)k` (minus 1 at `j = 2`), valid for `s_k = 1 + 2^-2k`.
    AppendixA,
    /// `c_j = z_j 2^(j-3)k` (minus 1 at `j = 2`), valid for `s_k = 1 + 2^-k`.
    AppendixB,
}

/// One polynomial piece on `[l_{k+1}, l_k]`, kept in exact rational form with
/// float mirrors. Float evaluation runs in the rescaled variable
/// `zeta = t / l_{k+1} in [1, 2]`, where the monomial basis is well behaved
/// at any `k`.
#[derive(Debug, Clone)]
pub struct PkPolynomial {
    pub k: u32,
    /// Derivative-contact order at the endpoints (3 for the degree-9 case).
    pub contact_order: u32,
    pub provenance: Provenance,
    /// Midpoint slope multiplier this piece was built for.
    slope: BigRational,
    coeffs_exact: Vec<BigRational>,
    /// Monomial coefficients rounded to double.
    coeffs: Vec<f64>,
    /// `d_j = c_j * 2^-(k+1)j`: coefficients of the piece as a polynomial in
    /// `zeta`.
    scaled: Vec<f64>,
}

fn falling(j: usize, r: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..r as usize {
        acc *= (j - i) as f64;
    }
    acc
}

fn falling_exact(j: usize, r: u32) -> BigRational {
    let mut acc = int(1);
    for i in 0..r as usize {
        acc *= int((j - i) as i64);
    }
    acc
}

/// Derivative of `-t^2` of the given order, exactly.
fn tail_deriv_exact(x: &BigRational, order: u32) -> BigRational {
    match order {
        0 => -(x * x),
        1 => int(-2) * x,
        2 => int(-2),
        _ => BigRational::zero(),
    }
}

impl PkPolynomial {
    fn from_exact(
        k: u32,
        contact_order: u32,
        provenance: Provenance,
        slope: BigRational,
        coeffs_exact: Vec<BigRational>,
    ) -> Self {
        let coeffs: Vec<f64> = coeffs_exact
            .iter()
            .map(|c| c.to_f64().expect("coefficient fits in f64"))
            .collect();
        let scaled: Vec<f64> = coeffs_exact
            .iter()
            .enumerate()
            .map(|(j, c)| {
                (c * pow2(-((k as i64 + 1) * j as i64)))
                    .to_f64()
                    .expect("scaled coefficient fits in f64")
            })
            .collect();
        PkPolynomial {
            k,
            contact_order,
            provenance,
            slope,
            coeffs_exact,
            coeffs,
            scaled,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_exact(&self) -> &[BigRational] {
        &self.coeffs_exact
    }

    /// Order-`r` derivative at `t`, evaluated through the rescaled variable.
    pub fn eval_deriv(&self, t: f64, order: u32) -> f64 {
        let zeta = t * ((self.k as f64) + 1.0).exp2();
        let mut acc = 0.0;
        for j in (order as usize..self.scaled.len()).rev() {
            acc = acc * zeta + self.scaled[j] * falling(j, order);
        }
        acc * ((self.k as f64 + 1.0) * order as f64).exp2()
    }

    /// Exact order-`r` derivative at a rational point.
    pub fn eval_deriv_exact(&self, t: &BigRational, order: u32) -> BigRational {
        let mut acc = BigRational::zero();
        for j in (order as usize..self.coeffs_exact.len()).rev() {
            acc = acc * t + &self.coeffs_exact[j] * falling_exact(j, order);
        }
        acc
    }

    /// Residuals of the defining constraints: contact with `-t^2` to the
    /// contact order at both endpoints, plus midpoint value and slope rows.
    pub fn constraint_residuals_exact(&self) -> Vec<BigRational> {
        let grid = DyadicGrid::new(self.k + 1);
        let mut res = Vec::new();
        for x in [grid.breakpoint_exact(self.k + 1), grid.breakpoint_exact(self.k)] {
            for r in 0..=self.contact_order {
                res.push(self.eval_deriv_exact(&x, r) - tail_deriv_exact(&x, r));
            }
        }
        let tk = grid.midpoint_exact(self.k);
        res.push(self.eval_deriv_exact(&tk, 0) - tail_deriv_exact(&tk, 0));
        res.push(self.eval_deriv_exact(&tk, 1) - &self.slope * tail_deriv_exact(&tk, 1));
        res
    }

    pub fn constraint_residuals(&self) -> Vec<f64> {
        self.constraint_residuals_exact()
            .iter()
            .map(|r| r.to_f64().unwrap_or(f64::NAN).abs())
            .collect()
    }
}

/// Solve the generalized Vandermonde system for the piece on
/// `[l_{k+1}, l_k]` of degree `2q + 3`: derivative orders `0..=q` match
/// `-t^2` at both endpoints, the midpoint value matches, and the midpoint
/// slope is `s_k` times that of `-t^2`.
pub fn solve_pk(k: u32, s_k: BigRational, q: u32) -> Result<PkPolynomial, CounterexError> {
    if q < 1 {
        return Err(CounterexError::argument("contact order q must be >= 1"));
    }
    if !s_k.is_positive() {
        return Err(CounterexError::argument("slope s_k must be positive"));
    }
    let n = (2 * q + 4) as usize;
    let grid = DyadicGrid::new(k + 1);
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut b: Vec<BigRational> = Vec::with_capacity(n);

    let mut push_row = |x: &BigRational, r: u32, rhs: BigRational| {
        let mut row = vec![BigRational::zero(); n];
        for (j, cell) in row.iter_mut().enumerate() {
            if j >= r as usize {
                let mut p = falling_exact(j, r);
                for _ in 0..(j - r as usize) {
                    p *= x;
                }
                *cell = p;
            }
        }
        a.push(row);
        b.push(rhs);
    };

    for x in [grid.breakpoint_exact(k + 1), grid.breakpoint_exact(k)] {
        for r in 0..=q {
            push_row(&x, r, tail_deriv_exact(&x, r));
        }
    }
    let tk = grid.midpoint_exact(k);
    push_row(&tk, 0, tail_deriv_exact(&tk, 0));
    push_row(&tk, 1, &s_k * tail_deriv_exact(&tk, 1));

    let coeffs = solve_exact(a, b).ok_or(CounterexError::Singular { k })?;
    Ok(PkPolynomial::from_exact(
        k,
        q,
        Provenance::VandermondeSolve,
        s_k,
        coeffs,
    ))
}

/// Closed-form coefficients for the two standard slope sequences.
pub fn closed_form_coeffs(k: u32, variant: ClosedFormVariant) -> PkPolynomial {
    let (shift, slope) = match variant {
        ClosedFormVariant::AppendixA => (4i64, SlopeKind::AppendixA.slope_exact(k)),
        ClosedFormVariant::AppendixB => (3i64, SlopeKind::AppendixB.slope_exact(k)),
    };
    let coeffs: Vec<BigRational> = (0..10)
        .map(|j| {
            let mut c = int(Z[j]) * pow2((j as i64 - shift) * k as i64);
            if j == 2 {
                c -= int(1);
            }
            c
        })
        .collect();
    PkPolynomial::from_exact(k, 3, Provenance::ClosedForm, slope, coeffs)
}
