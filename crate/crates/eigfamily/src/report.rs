use crate::error::EigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    EndpointMaximum,
    ToleranceNotReached,
}

/// One outer-iteration record: the current level (or shift) and the width of
/// the bracket still in play.
#[derive(Debug, Clone, Copy)]
pub struct IterationRecord {
    pub level: f64,
    pub bracket_width: f64,
}

/// Common output of the global and local optimizers.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub optimum: f64,
    pub optimizers: Vec<f64>,
    pub iterations: Vec<IterationRecord>,
    /// `(location, value)` samples certifying a bound on the optimum.
    pub certificates: Vec<(f64, f64)>,
    /// Median of `log|e_{k+1}| / log|e_k|` over the level history; NaN when
    /// the errors collapse to machine precision before a trend is visible.
    pub empirical_order: f64,
    /// Curvature of the final local quadratic fit; NaN when no fit was made.
    pub curvature: f64,
    pub status: SolveStatus,
}

/// Convergence-order estimate from an iterate history whose last entry
/// stands in for the limit.
pub fn empirical_order(history: &[f64]) -> Result<f64, EigError> {
    if history.len() < 4 {
        return Err(EigError::argument("need at least 4 iterates"));
    }
    let limit = *history.last().unwrap();
    let scale = 1.0 + limit.abs();
    let errs: Vec<f64> = history[..history.len() - 1]
        .iter()
        .map(|x| (x - limit).abs() / scale)
        .collect();
    let mut ratios = Vec::new();
    for w in errs.windows(2) {
        let (e0, e1) = (w[0], w[1]);
        // Both errors must sit strictly inside (rounding floor, 1) for the
        // log ratio to mean anything.
        if e0 > 1e-15 && e1 > 1e-15 && e0 < 1.0 && e1 < 1.0 {
            ratios.push(e1.ln() / e0.ln());
        }
    }
    if ratios.is_empty() {
        return Ok(f64::NAN);
    }
    ratios.sort_by(f64::total_cmp);
    Ok(ratios[ratios.len() / 2])
}
