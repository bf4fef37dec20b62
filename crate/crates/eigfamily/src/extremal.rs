use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::EigError;
use crate::family::{HermitianFamily, MatrixFamily};

/// Relative threshold under which `H(t)` counts as singular for the inner
/// spectral radius.
pub const SINGULARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalKind {
    LambdaMax,
    LambdaMin,
    SpecRadius,
    InnerSpecRadius,
    SigmaMax,
    SigmaMin,
}

impl ExtremalKind {
    pub fn needs_matrix_family(self) -> bool {
        matches!(self, ExtremalKind::SigmaMax | ExtremalKind::SigmaMin)
    }

    fn name(self) -> &'static str {
        match self {
            ExtremalKind::LambdaMax => "lambda_max",
            ExtremalKind::LambdaMin => "lambda_min",
            ExtremalKind::SpecRadius => "spec_radius",
            ExtremalKind::InnerSpecRadius => "inner_spec_radius",
            ExtremalKind::SigmaMax => "sigma_max",
            ExtremalKind::SigmaMin => "sigma_min",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    Hermitian(HermitianFamily),
    Matrix(MatrixFamily),
}

/// A scalar function of `t` extracted from the spectrum of a matrix family.
#[derive(Debug, Clone)]
pub struct ExtremalFunction {
    family: Family,
    kind: ExtremalKind,
}

impl ExtremalFunction {
    pub fn new(family: Family, kind: ExtremalKind) -> Result<Self, EigError> {
        match (&family, kind.needs_matrix_family()) {
            (Family::Matrix(_), true) | (Family::Hermitian(_), false) => {
                Ok(ExtremalFunction { family, kind })
            }
            (_, true) => Err(EigError::KindMismatch { kind: kind.name(), needs: "matrix" }),
            (_, false) => Err(EigError::KindMismatch { kind: kind.name(), needs: "Hermitian" }),
        }
    }

    pub fn hermitian(family: HermitianFamily, kind: ExtremalKind) -> Result<Self, EigError> {
        Self::new(Family::Hermitian(family), kind)
    }

    pub fn matrix(family: MatrixFamily, kind: ExtremalKind) -> Result<Self, EigError> {
        Self::new(Family::Matrix(family), kind)
    }

    pub fn kind(&self) -> ExtremalKind {
        self.kind
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The Hermitian family whose spectrum drives this function: the family
    /// itself, or the Gram family `A*A` (resp. `AA*`) for sigma kinds.
    pub fn spectral_family(&self) -> HermitianFamily {
        match &self.family {
            Family::Hermitian(h) => h.clone(),
            Family::Matrix(a) => HermitianFamily::Gram { inner: a.clone() },
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64, EigError> {
        let ev = self.spectral_family().eigenvalues(t)?;
        let n = ev.len();
        Ok(match self.kind {
            ExtremalKind::LambdaMax => ev[n - 1],
            ExtremalKind::LambdaMin => ev[0],
            ExtremalKind::SpecRadius => ev[n - 1].max(-ev[0]),
            ExtremalKind::InnerSpecRadius => {
                let norm = ev[n - 1].max(-ev[0]);
                let inner = ev.iter().fold(f64::INFINITY, |m, &l| m.min(l.abs()));
                if inner <= SINGULARITY_TOL * norm {
                    0.0
                } else {
                    inner
                }
            }
            // Gram eigenvalues are squared singular values; tiny negative
            // values are rounding of an exact zero.
            ExtremalKind::SigmaMax => ev[n - 1].max(0.0).sqrt(),
            ExtremalKind::SigmaMin => ev[0].max(0.0).sqrt(),
        })
    }
}

/// Independent route to `(sigma_max, sigma_min)` for cross-checking the
/// Gram-family path.
pub fn singular_values_direct(
    fam: &MatrixFamily,
    t: f64,
) -> Result<(f64, f64), EigError> {
    let a: DMatrix<Complex64> = fam.eval(t)?;
    let sv = a.svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0f64, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((max, min))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_t_neg_t() -> HermitianFamily {
        let z = DMatrix::zeros(2, 2);
        let lin = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
            .map(|x| Complex64::new(x, 0.0));
        HermitianFamily::polynomial(vec![z, lin]).unwrap()
    }

    #[test]
    fn lambda_max_of_diag_family() {
        let f = ExtremalFunction::hermitian(diag_t_neg_t(), ExtremalKind::LambdaMax).unwrap();
        assert!((f.eval(0.3).unwrap() - 0.3).abs() < 1e-14);
    }

    #[test]
    fn spec_radius_of_diag_family() {
        let f = ExtremalFunction::hermitian(diag_t_neg_t(), ExtremalKind::SpecRadius).unwrap();
        assert!((f.eval(-2.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn scalar_sigma_min_vanishes_at_zero() {
        let fam = MatrixFamily::polynomial(vec![
            DMatrix::zeros(1, 1),
            DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)),
        ])
        .unwrap();
        let f = ExtremalFunction::matrix(fam, ExtremalKind::SigmaMin).unwrap();
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        assert!((f.eval(-0.25).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn inner_spec_radius_handles_singularity() {
        let f =
            ExtremalFunction::hermitian(diag_t_neg_t(), ExtremalKind::InnerSpecRadius).unwrap();
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        assert!((f.eval(0.5).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        assert!(ExtremalFunction::hermitian(diag_t_neg_t(), ExtremalKind::SigmaMax).is_err());
    }
}
