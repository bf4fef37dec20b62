use eigfamily::{
    empirical_order, local_refine_fn, EigError, IterationRecord, SolveReport, SolveStatus,
};

use crate::error::SolverError;

pub type Objective<'a> = dyn Fn(f64) -> Result<f64, EigError> + 'a;

#[derive(Debug, Clone, Copy)]
pub struct LevelSetOptions {
    pub initial_points: usize,
    pub max_iterations: usize,
    pub tol: f64,
}

impl LevelSetOptions {
    pub fn with_tol(tol: f64) -> Self {
        LevelSetOptions { initial_points: 400, max_iterations: 30, tol }
    }
}

/// Level-set global maximization of a continuous objective on `[a, b]`:
/// sample, then repeatedly isolate the intervals where the objective exceeds
/// the current level, evaluate their midpoints, and raise the level to the
/// best value seen. Terminates when the level stalls within tolerance, then
/// polishes the best point locally.
///
/// Samples at which the objective fails to evaluate (isolated poles) are
/// skipped rather than fatal.
pub fn levelset_maximize(
    g: &Objective,
    (a, b): (f64, f64),
    opts: &LevelSetOptions,
) -> Result<SolveReport, SolverError> {
    if !(a < b) {
        return Err(SolverError::argument("domain must satisfy a < b"));
    }
    if !(opts.tol > 0.0) || opts.initial_points < 3 {
        return Err(SolverError::argument("need tol > 0 and at least 3 initial points"));
    }

    // Sorted pool of evaluated points.
    let mut pool: Vec<(f64, f64)> = Vec::new();
    for i in 0..opts.initial_points {
        let u = a + (b - a) * i as f64 / (opts.initial_points - 1) as f64;
        if let Ok(v) = g(u) {
            pool.push((u, v));
        }
    }
    if pool.is_empty() {
        return Err(SolverError::argument("objective failed at every sample point"));
    }
    let certificates = pool.clone();

    let mut gamma = pool.iter().fold(f64::NEG_INFINITY, |m, &(_, v)| m.max(v));
    let mut history = vec![gamma];
    let mut iterations = Vec::new();

    for _ in 0..opts.max_iterations {
        // Maximal runs of pool points sitting at the current level.
        let mut intervals: Vec<(f64, f64)> = Vec::new();
        let mut i = 0;
        while i < pool.len() {
            if pool[i].1 >= gamma {
                let start = i;
                while i + 1 < pool.len() && pool[i + 1].1 >= gamma {
                    i += 1;
                }
                let left = if start == 0 {
                    a
                } else {
                    bisect_crossing(g, gamma, pool[start - 1].0, pool[start].0, true)
                };
                let right = if i == pool.len() - 1 {
                    b
                } else {
                    bisect_crossing(g, gamma, pool[i].0, pool[i + 1].0, false)
                };
                intervals.push((left, right));
            }
            i += 1;
        }
        if intervals.is_empty() {
            break;
        }
        let width = intervals
            .iter()
            .fold(0.0f64, |m, &(l, r)| m.max(r - l));
        iterations.push(IterationRecord { level: gamma, bracket_width: width });

        let mut gamma_next = gamma;
        for &(l, r) in &intervals {
            let mid = 0.5 * (l + r);
            if let Ok(v) = g(mid) {
                insert_sorted(&mut pool, (mid, v));
                gamma_next = gamma_next.max(v);
            }
            // The crossing points themselves tighten future runs.
            for u in [l, r] {
                if let Ok(v) = g(u) {
                    insert_sorted(&mut pool, (u, v));
                }
            }
        }
        let improvement = gamma_next - gamma;
        gamma = gamma_next;
        history.push(gamma);
        if improvement <= 0.01 * opts.tol || width <= 1e-13 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
    }

    // Polish around the best pool point.
    let best = pool
        .iter()
        .enumerate()
        .max_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
        .map(|(i, _)| i)
        .unwrap();
    let lo = if best == 0 { a } else { pool[best - 1].0 };
    let hi = if best == pool.len() - 1 { b } else { pool[best + 1].0 };
    let (mut u_star, mut optimum) = pool[best];
    let mut curvature = f64::NAN;
    if lo < hi {
        if let Ok(rep) = local_refine_fn(&|u| g(u), (lo, hi), 1e-12 * (1.0 + u_star.abs())) {
            if rep.optimum >= optimum {
                optimum = rep.optimum;
                u_star = rep.optimizers[0];
            }
            curvature = rep.curvature;
        }
    }
    gamma = gamma.max(optimum);
    history.push(gamma);

    let status = if (u_star - a).abs() <= 1e-6 * (b - a) || (b - u_star).abs() <= 1e-6 * (b - a) {
        SolveStatus::EndpointMaximum
    } else {
        SolveStatus::Converged
    };
    let order = if history.len() >= 4 {
        empirical_order(&history).unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    Ok(SolveReport {
        optimum: gamma,
        optimizers: vec![u_star],
        iterations,
        certificates,
        empirical_order: order,
        curvature,
        status,
    })
}

/// Crossing of `g = level` inside `[lo, hi]`, where the side named by
/// `rising` holds `g >= level`. Falls back to the inside endpoint when the
/// objective fails mid-bisection.
fn bisect_crossing(g: &Objective, level: f64, lo: f64, hi: f64, rising: bool) -> f64 {
    let (mut out, mut inside) = if rising { (lo, hi) } else { (hi, lo) };
    for _ in 0..40 {
        let mid = 0.5 * (out + inside);
        match g(mid) {
            Ok(v) if v >= level => inside = mid,
            Ok(_) => out = mid,
            Err(_) => break,
        }
    }
    0.5 * (out + inside)
}

fn insert_sorted(pool: &mut Vec<(f64, f64)>, entry: (f64, f64)) {
    match pool.binary_search_by(|p| p.0.total_cmp(&entry.0)) {
        Ok(_) => {}
        Err(pos) => pool.insert(pos, entry),
    }
}

/// Plain dense-grid maximization with local polish; the slow reference
/// method behind `--method grid`.
pub fn grid_maximize(
    g: &Objective,
    (a, b): (f64, f64),
    points: usize,
    tol: f64,
) -> Result<SolveReport, SolverError> {
    let opts = LevelSetOptions { initial_points: points, max_iterations: 0, tol };
    levelset_maximize(g, (a, b), &opts)
}
