//! A piecewise-polynomial function on `[-1, 1]` whose pieces contact `-t^2`
//! to high derivative order at dyadic breakpoints accumulating at 0, while a
//! prescribed slope mismatch at each interval midpoint forces the pointwise
//! max of the function and its reflection to be nondifferentiable arbitrarily
//! close to the isolated maximizer at 0.
//!
//! Construction and verification both run in exact rational arithmetic where
//! it matters: per-interval polynomials are solved from their generalized
//! Vandermonde systems over `BigRational`, with the known closed-form integer
//! coefficient table as the fast production path for the two standard slope
//! sequences.

mod adapter;
mod error;
mod function;
mod grid;
mod linsolve;
mod piece;
mod plot;
mod slopes;
mod verify;

pub use adapter::counterexample_max_function;
pub use error::CounterexError;
pub use function::{CounterexampleFunction, DEFAULT_K_MAX};
pub use grid::DyadicGrid;
pub use piece::{closed_form_coeffs, solve_pk, ClosedFormVariant, PkPolynomial, Provenance, Z};
pub use plot::{emit_plot_data, Figure};
pub use slopes::SlopeKind;
pub use verify::{generalize_q, isolation_bound, C3Report, QReport, GRID_POINTS};

pub(crate) mod rat {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    /// Exact `2^e`.
    pub fn pow2(e: i64) -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e))
        }
    }

    pub fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}
