use crate::error::EigError;
use crate::extremal::ExtremalFunction;
use crate::report::{empirical_order, IterationRecord, SolveReport, SolveStatus};

const INVPHI: f64 = 0.618_033_988_749_894_9;
const MAX_ITER: usize = 200;

/// Locate the single local maximizer of `f` inside `[a, b]` to within `tol`:
/// golden-section shrinking with a quadratic-fit step attempted each round
/// once the bracket is small enough for the local C^2 model to hold.
pub fn local_refine(
    f: &ExtremalFunction,
    bracket: (f64, f64),
    tol: f64,
) -> Result<SolveReport, EigError> {
    local_refine_fn(&|t| f.eval(t), bracket, tol)
}

/// Same algorithm over an arbitrary objective; shared with the level-set
/// solvers' polishing step.
pub fn local_refine_fn(
    f: &dyn Fn(f64) -> Result<f64, EigError>,
    (a0, b0): (f64, f64),
    tol: f64,
) -> Result<SolveReport, EigError> {
    if !(a0 < b0) {
        return Err(EigError::argument("bracket must satisfy a < b"));
    }
    if !(tol > 0.0) {
        return Err(EigError::argument("tol must be positive"));
    }
    let (mut a, mut b) = (a0, b0);
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    let mut iterations = Vec::new();
    let mut certificates = Vec::new();
    let mut history = Vec::new();
    let mut curvature = f64::NAN;

    let mut iter = 0;
    while b - a > tol && iter < MAX_ITER {
        iter += 1;
        // Quadratic fit through (a, x_best, b) once golden has localized.
        let (xb, fb) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        if b - a < 1e-2 * (b0 - a0) {
            if let Some((xq, c)) = parabola_vertex(f, a, xb, fb, b)? {
                curvature = c;
                if xq > a && xq < b && (xq - xb).abs() > f64::EPSILON * (1.0 + xb.abs()) {
                    let fq = f(xq)?;
                    if fq >= fb {
                        // Re-center the golden points around the fit vertex.
                        let half = (b - a) * 0.25;
                        a = (xq - half).max(a);
                        b = (xq + half).min(b);
                        x1 = b - INVPHI * (b - a);
                        x2 = a + INVPHI * (b - a);
                        f1 = f(x1)?;
                        f2 = f(x2)?;
                        certificates.push((xq, fq));
                        history.push(xq);
                        iterations.push(IterationRecord { level: fq, bracket_width: b - a });
                        continue;
                    }
                }
            }
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = f(x2)?;
        }
        let (xb, fb) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        certificates.push((xb, fb));
        history.push(xb);
        iterations.push(IterationRecord { level: fb, bracket_width: b - a });
    }

    let (xb, fb) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    // Final curvature from a symmetric fit at the located point.
    if let Some((_, c)) = parabola_vertex(f, xb - tol.max(1e-6), xb, fb, xb + tol.max(1e-6))? {
        curvature = c;
    }
    let status = if (xb - a0).abs() <= 2.0 * tol || (b0 - xb).abs() <= 2.0 * tol {
        SolveStatus::EndpointMaximum
    } else if b - a <= tol {
        SolveStatus::Converged
    } else {
        SolveStatus::ToleranceNotReached
    };
    history.push(xb);
    let order = if history.len() >= 4 {
        empirical_order(&history).unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    Ok(SolveReport {
        optimum: fb,
        optimizers: vec![xb],
        iterations,
        certificates,
        empirical_order: order,
        curvature,
        status,
    })
}

/// Vertex and curvature of the parabola through `(a, f(a)), (m, fm), (b, f(b))`.
/// None when the fit is degenerate or concave-up.
fn parabola_vertex(
    f: &dyn Fn(f64) -> Result<f64, EigError>,
    a: f64,
    m: f64,
    fm: f64,
    b: f64,
) -> Result<Option<(f64, f64)>, EigError> {
    let (fa, fb) = (f(a)?, f(b)?);
    let (d1, d2) = (m - a, b - m);
    let denom = d1 * d2 * (d1 + d2);
    if denom == 0.0 {
        return Ok(None);
    }
    // Divided differences on the three nodes.
    let s1 = (fm - fa) / d1;
    let s2 = (fb - fm) / d2;
    let curv = 2.0 * (s2 - s1) / (d1 + d2);
    if curv >= 0.0 {
        return Ok(None);
    }
    let slope_m = (s1 * d2 + s2 * d1) / (d1 + d2);
    Ok(Some((m - slope_m / curv, curv)))
}
