use std::f64::consts::PI;
use std::sync::Arc;

use eigfamily::{EigError, ExtremalFunction, ExtremalKind, HermitianFamily, SolveReport};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::SolverError;
use crate::levelset::{grid_maximize, levelset_maximize, LevelSetOptions};
use crate::hinf::Method;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusForm {
    /// `max over [0, 2pi) of lambda_max(H(theta))`.
    LambdaMax,
    /// `max over [0, pi) of rho(H(theta))`.
    SpecRadius,
}

/// `H(theta) = (e^{i theta} A + e^{-i theta} A*) / 2` as a Hermitian family.
pub fn rotation_family(a: &DMatrix<Complex64>) -> HermitianFamily {
    let a = a.clone();
    let n = a.nrows();
    HermitianFamily::Callable {
        n,
        f: Arc::new(move |theta: f64| {
            let phase = Complex64::from_polar(0.5, theta);
            Ok(&a * phase + a.adjoint() * phase.conj())
        }),
    }
}

pub fn numerical_radius(a: &DMatrix<Complex64>, tol: f64) -> Result<SolveReport, SolverError> {
    numerical_radius_with(a, tol, RadiusForm::LambdaMax, Method::LevelSet)
}

pub fn numerical_radius_with(
    a: &DMatrix<Complex64>,
    tol: f64,
    form: RadiusForm,
    method: Method,
) -> Result<SolveReport, SolverError> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(SolverError::argument("matrix must be square and nonempty"));
    }
    if !(tol > 0.0) {
        return Err(SolverError::argument("tol must be positive"));
    }
    let family = rotation_family(a);
    let (kind, domain) = match form {
        RadiusForm::LambdaMax => (ExtremalKind::LambdaMax, (0.0, 2.0 * PI)),
        RadiusForm::SpecRadius => (ExtremalKind::SpecRadius, (0.0, PI)),
    };
    let f = ExtremalFunction::hermitian(family, kind)?;
    let g = move |theta: f64| -> Result<f64, EigError> { f.eval(theta) };
    match method {
        Method::LevelSet => levelset_maximize(&g, domain, &LevelSetOptions::with_tol(tol)),
        Method::Grid => grid_maximize(&g, domain, 1000, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(n: usize, re: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(n, n, re).map(|x| Complex64::new(x, 0.0))
    }

    #[test]
    fn hermitian_matrix_radius_is_spectral() {
        let a = cm(2, &[2.0, 0.0, 0.0, -1.0]);
        let rep = numerical_radius(&a, 1e-8).unwrap();
        assert!((rep.optimum - 2.0).abs() <= 1e-8);
    }

    #[test]
    fn jordan_block_radius_is_half() {
        let a = cm(2, &[0.0, 1.0, 0.0, 0.0]);
        let rep = numerical_radius(&a, 1e-10).unwrap();
        assert!((rep.optimum - 0.5).abs() <= 1e-10, "{}", rep.optimum);
    }

    #[test]
    fn both_forms_agree() {
        let a = eigfamily::random_complex_matrix(7, 6);
        let l = numerical_radius_with(&a, 1e-9, RadiusForm::LambdaMax, Method::LevelSet).unwrap();
        let r = numerical_radius_with(&a, 1e-9, RadiusForm::SpecRadius, Method::LevelSet).unwrap();
        assert!((l.optimum - r.optimum).abs() <= 1e-8 * (1.0 + l.optimum));
    }

    #[test]
    fn field_of_values_bounds() {
        for seed in 0..5u64 {
            let a = eigfamily::random_complex_matrix(seed, 5);
            let r = numerical_radius(&a, 1e-8).unwrap().optimum;
            let smax = a.clone().svd(false, false).singular_values.max();
            assert!(r <= smax + 1e-8);
            assert!(r >= smax / 2.0 - 1e-8);
        }
    }
}
