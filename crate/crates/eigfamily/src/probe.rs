use crate::error::EigError;
use crate::extremal::{ExtremalFunction, ExtremalKind};

/// Smallest step at which double-precision second differences remain
/// meaningful; recorded in every report.
pub const FD_FLOOR: f64 = 1.4901161193847656e-8; // 2^-26

/// Relative cluster threshold for eigenvalue multiplicity at the extremizer.
pub const CLUSTER_TOL: f64 = 1e-10;

/// Relative floor below which a sigma_min minimizer violates the
/// nonzero-minimum hypothesis.
pub const SIGMA_MIN_GUARD: f64 = 1e-8;

pub fn tol_match(scale: f64) -> f64 {
    1e-4 * (1.0 + scale)
}

#[derive(Debug, Clone, Copy)]
pub struct FdRow {
    pub step: f64,
    pub left: f64,
    pub right: f64,
    pub central: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeStatus {
    Smooth,
    Nonsmooth,
    /// The probed extremum sits where smoothness is not expected to begin
    /// with (e.g. sigma_min with minimal value 0).
    AssumptionViolated,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub point: f64,
    pub value: f64,
    pub fd_first: Vec<FdRow>,
    pub fd_second: Vec<FdRow>,
    /// Max slope of the second-difference field over a small window; a
    /// descriptive Lipschitz proxy with no pass threshold.
    pub lipschitz_estimate: f64,
    /// Number of eigenvalues of the driving Hermitian matrix within
    /// `1e-10 * norm` of the extremal one at the probe point.
    pub cluster_size: usize,
    pub fd_floor: f64,
    pub status: ProbeStatus,
    pub smooth: bool,
}

fn sided_first(f: &impl Fn(f64) -> Result<f64, EigError>, x: f64, h: f64) -> Result<FdRow, EigError> {
    let f0 = f(x)?;
    let right = (-3.0 * f0 + 4.0 * f(x + h)? - f(x + 2.0 * h)?) / (2.0 * h);
    let left = (3.0 * f0 - 4.0 * f(x - h)? + f(x - 2.0 * h)?) / (2.0 * h);
    let central = (f(x + h)? - f(x - h)?) / (2.0 * h);
    Ok(FdRow { step: h, left, right, central })
}

fn sided_second(f: &impl Fn(f64) -> Result<f64, EigError>, x: f64, h: f64) -> Result<FdRow, EigError> {
    let f0 = f(x)?;
    // One-sided 4-point stencil, exact through cubic terms.
    let right = (2.0 * f0 - 5.0 * f(x + h)? + 4.0 * f(x + 2.0 * h)? - f(x + 3.0 * h)?) / (h * h);
    let left = (2.0 * f0 - 5.0 * f(x - h)? + 4.0 * f(x - 2.0 * h)? - f(x - 3.0 * h)?) / (h * h);
    let central = (f(x + h)? - 2.0 * f0 + f(x - h)?) / (h * h);
    Ok(FdRow { step: h, left, right, central })
}

/// Finite-difference smoothness evidence at a candidate extremizer `x`.
/// `max_order` is 1 or 2; the smoothness verdict uses every computed order.
pub fn smoothness_probe(
    f: &ExtremalFunction,
    x: f64,
    max_order: u32,
) -> Result<ProbeReport, EigError> {
    if !(1..=2).contains(&max_order) {
        return Err(EigError::argument("max_order must be 1 or 2"));
    }
    let eval = |t: f64| f.eval(t);
    let value = eval(x)?;

    let steps: Vec<f64> = (7..=13).map(|i| (-(i as f64)).exp2()).collect();
    let mut fd_first = Vec::new();
    let mut fd_second = Vec::new();
    for &h in &steps {
        fd_first.push(sided_first(&eval, x, h)?);
        if max_order == 2 {
            fd_second.push(sided_second(&eval, x, h)?);
        }
    }

    // Agreement of the one-sided tables at the two smallest steps.
    let mut smooth = true;
    for table in [&fd_first, &fd_second] {
        for row in table.iter().rev().take(2) {
            let scale = row.left.abs().max(row.right.abs());
            if (row.left - row.right).abs() > tol_match(scale) {
                smooth = false;
            }
        }
    }

    // Second-difference field over a window around x; max slope between
    // neighbors estimates the Lipschitz constant of f''.
    let mut lipschitz_estimate = 0.0f64;
    if max_order == 2 {
        let w = (-7.0f64).exp2();
        let h = (-11.0f64).exp2();
        let mut prev: Option<f64> = None;
        for j in -4..=4i32 {
            let t = x + j as f64 * w;
            let fd2 = (eval(t + h)? - 2.0 * eval(t)? + eval(t - h)?) / (h * h);
            if let Some(p) = prev {
                lipschitz_estimate = lipschitz_estimate.max((fd2 - p).abs() / w);
            }
            prev = Some(fd2);
        }
    }

    // Eigenvalue cluster at the probe point.
    let spectral = f.spectral_family();
    let ev = spectral.eigenvalues(x)?;
    let norm = ev.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let target = match f.kind() {
        ExtremalKind::LambdaMax | ExtremalKind::SpecRadius | ExtremalKind::SigmaMax => {
            *ev.last().unwrap()
        }
        ExtremalKind::LambdaMin | ExtremalKind::SigmaMin => ev[0],
        ExtremalKind::InnerSpecRadius => {
            *ev.iter()
                .min_by(|a, b| a.abs().total_cmp(&b.abs()))
                .unwrap()
        }
    };
    let cluster_size = ev
        .iter()
        .filter(|&&l| (l - target).abs() <= CLUSTER_TOL * norm.max(f64::MIN_POSITIVE))
        .count();

    let mut status = if smooth { ProbeStatus::Smooth } else { ProbeStatus::Nonsmooth };
    if f.kind() == ExtremalKind::SigmaMin {
        // Gram norm is sigma_max^2.
        let sigma_max = norm.max(0.0).sqrt();
        if value <= SIGMA_MIN_GUARD * sigma_max {
            status = ProbeStatus::AssumptionViolated;
            smooth = false;
        }
    }

    Ok(ProbeReport {
        point: x,
        value,
        fd_first,
        fd_second,
        lipschitz_estimate,
        cluster_size,
        fd_floor: FD_FLOOR,
        status,
        smooth,
    })
}
