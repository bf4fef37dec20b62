use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::EigError;

pub type ScalarCurve = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type MatrixFn = Arc<dyn Fn(f64) -> Result<DMatrix<Complex64>, String> + Send + Sync>;

/// Univariate analytic Hermitian family `t -> H(t)`.
#[derive(Clone)]
pub enum HermitianFamily {
    /// `H(t) = Σ H_m t^m` with each `H_m` exactly Hermitian.
    Polynomial { coeffs: Vec<DMatrix<Complex64>> },
    /// `H(t) = U diag(c_1(t), ..., c_n(t)) U*` for a fixed unitary `U`.
    RotatedDiagonal {
        unitary: DMatrix<Complex64>,
        curves: Vec<ScalarCurve>,
    },
    /// `H(t) = A(t)* A(t)` (or `A A*` for wide `A`).
    Gram { inner: MatrixFamily },
    /// Arbitrary callable evaluation; the caller guarantees Hermitian values.
    Callable { n: usize, f: MatrixFn },
}

impl fmt::Debug for HermitianFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HermitianFamily::Polynomial { coeffs } => f
                .debug_struct("Polynomial")
                .field("n", &self.dimension())
                .field("degree", &(coeffs.len().saturating_sub(1)))
                .finish(),
            HermitianFamily::RotatedDiagonal { curves, .. } => f
                .debug_struct("RotatedDiagonal")
                .field("n", &curves.len())
                .finish(),
            HermitianFamily::Gram { inner } => {
                f.debug_struct("Gram").field("inner", inner).finish()
            }
            HermitianFamily::Callable { n, .. } => {
                f.debug_struct("Callable").field("n", n).finish()
            }
        }
    }
}

impl HermitianFamily {
    pub fn polynomial(coeffs: Vec<DMatrix<Complex64>>) -> Result<Self, EigError> {
        if coeffs.is_empty() {
            return Err(EigError::argument("need at least one coefficient matrix"));
        }
        let n = coeffs[0].nrows();
        for (m, c) in coeffs.iter().enumerate() {
            if c.nrows() != n || c.ncols() != n {
                return Err(EigError::argument("coefficient matrices must be square of equal size"));
            }
            let res = (c - c.adjoint()).norm();
            if res > 1e-13 * (1.0 + c.norm()) {
                return Err(EigError::argument(format!(
                    "coefficient {m} is not Hermitian (residual {res:.2e})"
                )));
            }
        }
        Ok(HermitianFamily::Polynomial { coeffs })
    }

    pub fn rotated_diagonal(
        unitary: DMatrix<Complex64>,
        curves: Vec<ScalarCurve>,
    ) -> Result<Self, EigError> {
        let n = curves.len();
        if unitary.nrows() != n || unitary.ncols() != n {
            return Err(EigError::argument("unitary size must match curve count"));
        }
        let res = (&unitary * unitary.adjoint() - DMatrix::identity(n, n)).norm();
        if res > 1e-10 {
            return Err(EigError::argument(format!("U is not unitary (residual {res:.2e})")));
        }
        Ok(HermitianFamily::RotatedDiagonal { unitary, curves })
    }

    pub fn dimension(&self) -> usize {
        match self {
            HermitianFamily::Polynomial { coeffs } => coeffs[0].nrows(),
            HermitianFamily::RotatedDiagonal { curves, .. } => curves.len(),
            HermitianFamily::Gram { inner } => inner.dims().0.min(inner.dims().1),
            HermitianFamily::Callable { n, .. } => *n,
        }
    }

    pub fn eval(&self, t: f64) -> Result<DMatrix<Complex64>, EigError> {
        match self {
            HermitianFamily::Polynomial { coeffs } => {
                let n = coeffs[0].nrows();
                let mut acc = DMatrix::zeros(n, n);
                for c in coeffs.iter().rev() {
                    acc = acc * Complex64::new(t, 0.0) + c;
                }
                Ok(acc)
            }
            HermitianFamily::RotatedDiagonal { unitary, curves } => {
                let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                    curves.len(),
                    curves.iter().map(|c| Complex64::new(c(t), 0.0)),
                ));
                Ok(unitary * d * unitary.adjoint())
            }
            HermitianFamily::Gram { inner } => {
                let a = inner.eval(t)?;
                Ok(if a.nrows() >= a.ncols() {
                    a.adjoint() * &a
                } else {
                    &a * a.adjoint()
                })
            }
            HermitianFamily::Callable { f, .. } => f(t).map_err(EigError::evaluation),
        }
    }

    /// `‖H(t) - H(t)*‖ / (1 + ‖H(t)‖)`.
    pub fn hermitian_residual(&self, t: f64) -> Result<f64, EigError> {
        let h = self.eval(t)?;
        Ok((&h - h.adjoint()).norm() / (1.0 + h.norm()))
    }

    /// Eigenvalues of `H(t)`, ascending.
    pub fn eigenvalues(&self, t: f64) -> Result<Vec<f64>, EigError> {
        let h = self.eval(t)?;
        // Exact symmetrization of rounding-level asymmetry keeps the
        // eigenvalues real.
        let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        Ok(ev)
    }

    /// `-H`, for reducing min problems to max problems.
    pub fn negated(&self) -> HermitianFamily {
        match self {
            HermitianFamily::Polynomial { coeffs } => HermitianFamily::Polynomial {
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
            HermitianFamily::RotatedDiagonal { unitary, curves } => {
                HermitianFamily::RotatedDiagonal {
                    unitary: unitary.clone(),
                    curves: curves
                        .iter()
                        .map(|c| {
                            let c = Arc::clone(c);
                            Arc::new(move |t: f64| -c(t)) as ScalarCurve
                        })
                        .collect(),
                }
            }
            other => {
                let inner = other.clone();
                HermitianFamily::Callable {
                    n: inner.dimension(),
                    f: Arc::new(move |t| inner.eval(t).map(|h| -h).map_err(|e| e.to_string())),
                }
            }
        }
    }
}

/// Univariate analytic (generally rectangular) matrix family `t -> A(t)`.
#[derive(Clone)]
pub enum MatrixFamily {
    Polynomial { coeffs: Vec<DMatrix<Complex64>> },
    Callable { rows: usize, cols: usize, f: MatrixFn },
}

impl fmt::Debug for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n) = self.dims();
        write!(f, "MatrixFamily({m}x{n})")
    }
}

impl MatrixFamily {
    pub fn polynomial(coeffs: Vec<DMatrix<Complex64>>) -> Result<Self, EigError> {
        if coeffs.is_empty() {
            return Err(EigError::argument("need at least one coefficient matrix"));
        }
        let (m, n) = (coeffs[0].nrows(), coeffs[0].ncols());
        if coeffs.iter().any(|c| c.nrows() != m || c.ncols() != n) {
            return Err(EigError::argument("coefficient matrices must share a shape"));
        }
        Ok(MatrixFamily::Polynomial { coeffs })
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            MatrixFamily::Polynomial { coeffs } => (coeffs[0].nrows(), coeffs[0].ncols()),
            MatrixFamily::Callable { rows, cols, .. } => (*rows, *cols),
        }
    }

    pub fn eval(&self, t: f64) -> Result<DMatrix<Complex64>, EigError> {
        match self {
            MatrixFamily::Polynomial { coeffs } => {
                let (m, n) = self.dims();
                let mut acc = DMatrix::zeros(m, n);
                for c in coeffs.iter().rev() {
                    acc = acc * Complex64::new(t, 0.0) + c;
                }
                Ok(acc)
            }
            MatrixFamily::Callable { f, .. } => f(t).map_err(EigError::evaluation),
        }
    }
}
