use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::SolverError;

/// Margin inside the left half-plane required of stable state matrices,
/// relative to `‖A‖`.
pub const STABILITY_MARGIN: f64 = 1e-12;

/// State-space system `x' = Ax + Bu`, `y = Cx + Du` with transfer matrix
/// `G(s) = C (sI - A)^{-1} B + D`.
#[derive(Debug, Clone)]
pub struct LtiSystem {
    pub a: DMatrix<Complex64>,
    pub b: DMatrix<Complex64>,
    pub c: DMatrix<Complex64>,
    pub d: DMatrix<Complex64>,
}

impl LtiSystem {
    pub fn new(
        a: DMatrix<Complex64>,
        b: DMatrix<Complex64>,
        c: DMatrix<Complex64>,
        d: DMatrix<Complex64>,
    ) -> Result<Self, SolverError> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(SolverError::format("A must be square"));
        }
        if b.nrows() != n {
            return Err(SolverError::format("B must have as many rows as A"));
        }
        if c.ncols() != n {
            return Err(SolverError::format("C must have as many columns as A"));
        }
        if d.nrows() != c.nrows() || d.ncols() != b.ncols() {
            return Err(SolverError::format("D must be p x m"));
        }
        Ok(LtiSystem { a, b, c, d })
    }

    /// `(n, m, p)`: states, inputs, outputs.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.a.nrows(), self.b.ncols(), self.c.nrows())
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        // Complex Schur form is triangular, so the eigenvalues always exist.
        self.a
            .clone()
            .schur()
            .eigenvalues()
            .expect("complex Schur always yields eigenvalues")
            .iter()
            .copied()
            .collect()
    }

    pub fn spectral_abscissa(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .fold(f64::NEG_INFINITY, |m, l| m.max(l.re))
    }

    pub fn is_stable(&self) -> bool {
        self.spectral_abscissa() < -STABILITY_MARGIN * self.a.norm()
    }

    pub fn require_stable(&self) -> Result<(), SolverError> {
        if self.is_stable() {
            Ok(())
        } else {
            Err(SolverError::Unstable { abscissa: self.spectral_abscissa() })
        }
    }

    /// `G(i omega)` by linear solve; no explicit inverse.
    pub fn transfer_eval(&self, omega: f64) -> Result<DMatrix<Complex64>, SolverError> {
        let n = self.a.nrows();
        let shifted = DMatrix::from_diagonal_element(n, n, Complex64::new(0.0, omega)) - &self.a;
        let x = shifted
            .lu()
            .solve(&self.b)
            .ok_or(SolverError::Pole { omega })?;
        Ok(&self.c * x + &self.d)
    }

    /// `A_xi = A + (xi/2) I`, `D_xi = D - (xi/2) I`; requires `m = p`.
    pub fn shifted(&self, xi: f64) -> Result<LtiSystem, SolverError> {
        let (n, m, p) = self.dims();
        if m != p {
            return Err(SolverError::argument("shift requires a square transfer matrix"));
        }
        let half = Complex64::new(xi / 2.0, 0.0);
        Ok(LtiSystem {
            a: &self.a + DMatrix::from_diagonal_element(n, n, half),
            b: self.b.clone(),
            c: self.c.clone(),
            d: &self.d - DMatrix::from_diagonal_element(m, m, half),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, SolverError> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| SolverError::format(e.to_string()))?;
        let a = matrix_from_json(&v, "A")?;
        let b = matrix_from_json(&v, "B")?;
        let c = matrix_from_json(&v, "C")?;
        let d = matrix_from_json(&v, "D")?;
        LtiSystem::new(a, b, c, d)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "A": matrix_to_json(&self.a),
            "B": matrix_to_json(&self.b),
            "C": matrix_to_json(&self.c),
            "D": matrix_to_json(&self.d),
        })
    }
}

fn matrix_from_json(v: &Value, key: &str) -> Result<DMatrix<Complex64>, SolverError> {
    let rows = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| SolverError::format(format!("missing matrix \"{key}\"")))?;
    if rows.is_empty() {
        return Err(SolverError::format(format!("matrix \"{key}\" has no rows")));
    }
    let mut data = Vec::new();
    let mut width = None;
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| SolverError::format(format!("\"{key}\": rows must be arrays")))?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(SolverError::format(format!("\"{key}\": ragged rows")))
            }
            _ => {}
        }
        for entry in row {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| {
                    SolverError::format(format!("\"{key}\": entries must be [re, im] pairs"))
                })?;
            let re = pair[0].as_f64().ok_or_else(|| {
                SolverError::format(format!("\"{key}\": non-numeric entry"))
            })?;
            let im = pair[1].as_f64().ok_or_else(|| {
                SolverError::format(format!("\"{key}\": non-numeric entry"))
            })?;
            data.push(Complex64::new(re, im));
        }
    }
    let width = width.unwrap();
    if width == 0 {
        return Err(SolverError::format(format!("matrix \"{key}\" has empty rows")));
    }
    Ok(DMatrix::from_row_slice(rows.len(), width, &data))
}

fn matrix_to_json(m: &DMatrix<Complex64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Reproducible random system; the state matrix is whatever the seed gives,
/// stable or not.
pub fn random_system_raw(seed: u64, n: usize, m: usize, p: usize) -> LtiSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entry = |_: usize, _: usize| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    };
    let a = DMatrix::from_fn(n, n, &mut entry);
    let b = DMatrix::from_fn(n, m, &mut entry);
    let c = DMatrix::from_fn(p, n, &mut entry);
    let d = DMatrix::from_fn(p, m, &mut entry);
    LtiSystem { a, b, c, d }
}

/// Reproducible random system, shifted to be comfortably stable.
pub fn random_system(seed: u64, n: usize, m: usize, p: usize) -> LtiSystem {
    let sys = random_system_raw(seed, n, m, p);
    let n = sys.a.nrows();
    // Shift the spectrum left of -0.1.
    let shift = sys.spectral_abscissa() + 0.1;
    LtiSystem {
        a: &sys.a - DMatrix::from_diagonal_element(n, n, Complex64::new(shift, 0.0)),
        ..sys
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(a: f64, b: f64, c: f64, d: f64) -> LtiSystem {
        let m = |x: f64| DMatrix::from_element(1, 1, Complex64::new(x, 0.0));
        LtiSystem::new(m(a), m(b), m(c), m(d)).unwrap()
    }

    #[test]
    fn scalar_transfer_values() {
        let sys = scalar(-1.0, 1.0, 1.0, 0.0);
        let g0 = sys.transfer_eval(0.0).unwrap();
        assert!((g0[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let g1 = sys.transfer_eval(1.0).unwrap();
        assert!((g1[(0, 0)].norm() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_b_gives_constant_d() {
        let sys = scalar(-1.0, 0.0, 1.0, 3.5);
        for w in [-10.0, 0.0, 2.0] {
            assert_eq!(sys.transfer_eval(w).unwrap()[(0, 0)], Complex64::new(3.5, 0.0));
        }
    }

    #[test]
    fn pole_detection() {
        let sys = scalar(0.0, 1.0, 1.0, 0.0);
        assert!(matches!(sys.transfer_eval(0.0), Err(SolverError::Pole { .. })));
        assert!(!sys.is_stable());
    }

    #[test]
    fn shifted_system_formulas() {
        let sys = scalar(-1.0, 1.0, 1.0, 1.0);
        let sh = sys.shifted(0.5).unwrap();
        assert_eq!(sh.a[(0, 0)], Complex64::new(-0.75, 0.0));
        assert_eq!(sh.d[(0, 0)], Complex64::new(0.75, 0.0));
        assert_eq!(sh.b, sys.b);
    }

    #[test]
    fn json_round_trip() {
        let sys = random_system(5, 3, 2, 2);
        let text = sys.to_json().to_string();
        let back = LtiSystem::from_json(&text).unwrap();
        assert_eq!(back.a, sys.a);
        assert_eq!(back.b, sys.b);
        assert_eq!(back.c, sys.c);
        assert_eq!(back.d, sys.d);
    }

    #[test]
    fn json_rejects_bad_shapes() {
        assert!(LtiSystem::from_json("{}").is_err());
        let ragged = r#"{"A": [[[0,0],[0,0]],[[0,0]]], "B": [[[1,0]]], "C": [[[1,0]]], "D": [[[0,0]]]}"#;
        assert!(LtiSystem::from_json(ragged).is_err());
    }

    #[test]
    fn random_system_is_stable_and_reproducible() {
        let s1 = random_system(42, 6, 2, 2);
        let s2 = random_system(42, 6, 2, 2);
        assert_eq!(s1.a, s2.a);
        assert!(s1.is_stable());
    }
}
