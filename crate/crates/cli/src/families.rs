use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::Value;

use crate::errors::AppError;

/// One matrix in the row-major `[[re, im], ...]` convention.
pub fn matrix_from_value(v: &Value, what: &str) -> Result<DMatrix<Complex64>, AppError> {
    let rows = v
        .as_array()
        .ok_or_else(|| AppError::usage(format!("{what}: expected an array of rows")))?;
    if rows.is_empty() {
        return Err(AppError::usage(format!("{what}: no rows")));
    }
    let mut data = Vec::new();
    let mut width = None;
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| AppError::usage(format!("{what}: rows must be arrays")))?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(AppError::usage(format!("{what}: ragged rows")))
            }
            _ => {}
        }
        for entry in row {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| AppError::usage(format!("{what}: entries must be [re, im]")))?;
            let (re, im) = (pair[0].as_f64(), pair[1].as_f64());
            match (re, im) {
                (Some(re), Some(im)) => data.push(Complex64::new(re, im)),
                _ => return Err(AppError::usage(format!("{what}: non-numeric entry"))),
            }
        }
    }
    let width = width.unwrap();
    if width == 0 {
        return Err(AppError::usage(format!("{what}: empty rows")));
    }
    Ok(DMatrix::from_row_slice(rows.len(), width, &data))
}

/// Family spec file: `{"coeffs": [M0, M1, ...]}` with `M(t) = sum M_j t^j`.
pub fn coeffs_from_spec(text: &str) -> Result<Vec<DMatrix<Complex64>>, AppError> {
    let v: Value = serde_json::from_str(text).map_err(|e| AppError::usage(e.to_string()))?;
    let list = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| AppError::usage("family spec needs a \"coeffs\" array"))?;
    list.iter()
        .enumerate()
        .map(|(j, m)| matrix_from_value(m, &format!("coeffs[{j}]")))
        .collect()
}

/// Single-matrix file: `{"A": M}`.
pub fn matrix_from_file_text(text: &str) -> Result<DMatrix<Complex64>, AppError> {
    let v: Value = serde_json::from_str(text).map_err(|e| AppError::usage(e.to_string()))?;
    let m = v
        .get("A")
        .ok_or_else(|| AppError::usage("matrix file needs an \"A\" entry"))?;
    matrix_from_value(m, "A")
}
