use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use counterex::{
    emit_plot_data, generalize_q, isolation_bound, CounterexampleFunction, Figure, SlopeKind,
};
use eigfamily::{
    local_refine, smoothness_probe, ExtremalFunction, ExtremalKind, HermitianFamily, MatrixFamily,
    ProbeReport, ProbeStatus, SolveReport, SolveStatus,
};
use maxfun::{builtin_family, BuiltinFamily, Side};
use solvers::{
    hinf_norm_with, numerical_radius_with, passivity_margin, random_system, random_system_raw,
    LtiSystem, Method, RadiusForm,
};

use crate::errors::AppError;
use crate::families::{coeffs_from_spec, matrix_from_file_text};
use crate::manifest::Manifest;
use crate::output::{emit_csv, emit_json, num};

pub fn slope_name(sk: SlopeKind) -> String {
    match sk {
        SlopeKind::AppendixA => "a".into(),
        SlopeKind::AppendixB => "b".into(),
        SlopeKind::ConstantTwo => "two".into(),
        SlopeKind::GeneralQ(q) => format!("q={q}"),
    }
}

fn status_name(s: SolveStatus) -> &'static str {
    match s {
        SolveStatus::Converged => "converged",
        SolveStatus::EndpointMaximum => "endpoint_maximum",
        SolveStatus::ToleranceNotReached => "tolerance_not_reached",
    }
}

fn report_body(rep: &SolveReport) -> Map<String, Value> {
    let mut body = Map::new();
    body.insert("optimum".into(), rep.optimum.into());
    body.insert("optimizers".into(), json!(rep.optimizers));
    body.insert(
        "iterations".into(),
        Value::Array(
            rep.iterations
                .iter()
                .map(|it| json!({"level": it.level, "bracket_width": it.bracket_width}))
                .collect(),
        ),
    );
    body.insert("certificate_count".into(), rep.certificates.len().into());
    body.insert("empirical_order".into(), rep.empirical_order.into());
    body.insert("curvature".into(), rep.curvature.into());
    body.insert("status".into(), status_name(rep.status).into());
    body
}

fn iterations_csv(rep: &SolveReport) -> Vec<u8> {
    let mut text = String::from("iteration,level,bracket_width\n");
    for (i, it) in rep.iterations.iter().enumerate() {
        text.push_str(&format!("{i},{},{}\n", num(it.level), num(it.bracket_width)));
    }
    text.into_bytes()
}

fn emit_report(
    rep: &SolveReport,
    extra: Map<String, Value>,
    manifest: &Manifest,
    report_format: &str,
    out: Option<&Path>,
) -> Result<(), AppError> {
    match report_format {
        "json" => {
            let mut body = report_body(rep);
            body.extend(extra);
            emit_json(body, manifest.finish(), out)
        }
        "csv" => {
            let out = out.ok_or_else(|| AppError::usage("--report csv requires --out"))?;
            emit_csv(&iterations_csv(rep), manifest.finish(), out)
        }
        other => Err(AppError::usage(format!("unknown report format '{other}'"))),
    }
}

pub fn counterexample_verify(
    sk: SlopeKind,
    k_max: u32,
    out: Option<&Path>,
) -> Result<(), AppError> {
    if k_max < 6 || k_max > 200 {
        return Err(AppError::usage("--kmax must be in 6..=200"));
    }
    let mut manifest = Manifest::new("counterexample verify");
    manifest.option("sk", slope_name(sk)).option("kmax", k_max);

    let f = CounterexampleFunction::new(sk, k_max)?;
    let c3 = f.verify_c3(5, k_max)?;
    let isolated = f.verify_isolated_max(13.min(k_max), k_max)?;
    let max_jump = c3
        .per_breakpoint_jumps
        .iter()
        .fold(0.0f64, |m, &(_, _, j)| m.max(j));
    let bounds: Vec<Value> = (13..=k_max.min(60))
        .map(|k| json!([k, isolation_bound(k)]))
        .collect();
    let gaps: Vec<Value> = (0..=k_max.min(20)).map(|k| json!([k, f.kink_gap(k)])).collect();

    let mut body = Map::new();
    body.insert("slopes".into(), slope_name(sk).into());
    body.insert("k_max".into(), k_max.into());
    body.insert("contact_order".into(), f.contact_order().into());
    body.insert("c3_plausible".into(), c3.c3_plausible.into());
    body.insert("isolated".into(), isolated.into());
    body.insert("max_breakpoint_jump".into(), max_jump.into());
    body.insert(
        "sup_top_deriv_per_interval".into(),
        Value::Array(
            c3.sup_top_deriv_per_interval
                .iter()
                .map(|&(k, s)| json!([k, s]))
                .collect(),
        ),
    );
    body.insert(
        "sup_first_deriv_mismatch".into(),
        Value::Array(
            c3.sup_first_deriv_mismatch
                .iter()
                .map(|&(k, s)| json!([k, s]))
                .collect(),
        ),
    );
    body.insert("isolation_bounds".into(), Value::Array(bounds));
    body.insert("kink_gaps".into(), Value::Array(gaps));
    emit_json(body, manifest.finish(), out)
}

pub fn counterexample_plot(
    sk: SlopeKind,
    k_max: u32,
    figure: Figure,
    resolution: usize,
    out: &Path,
) -> Result<(), AppError> {
    let mut manifest = Manifest::new("counterexample plot");
    manifest
        .option("sk", slope_name(sk))
        .option("kmax", k_max)
        .option("figure", format!("{figure:?}"))
        .option("resolution", resolution);
    let f = CounterexampleFunction::new(sk, k_max)?;
    let mut buf = Vec::new();
    emit_plot_data(&f, figure, resolution, &mut buf)?;
    emit_csv(&buf, manifest.finish(), out)
}

pub fn counterexample_generalize(
    q: u32,
    k_max: u32,
    sk: Option<SlopeKind>,
    out: Option<&Path>,
) -> Result<(), AppError> {
    if k_max < 6 {
        return Err(AppError::usage("--kmax must be at least 6"));
    }
    let mut manifest = Manifest::new("counterexample generalize");
    manifest.option("q", q).option("kmax", k_max);
    if let Some(sk) = sk {
        manifest.option("sk", slope_name(sk));
    }
    let rep = generalize_q(q, 5, k_max, sk)?;
    let mut body = Map::new();
    body.insert("q".into(), rep.q.into());
    body.insert("slopes".into(), slope_name(rep.slope_kind).into());
    body.insert("max_jump_per_order".into(), json!(rep.max_jump_per_order));
    body.insert(
        "sup_top_deriv_per_interval".into(),
        Value::Array(
            rep.sup_top_deriv_per_interval
                .iter()
                .map(|&(k, s)| json!([k, s]))
                .collect(),
        ),
    );
    body.insert(
        "max_midpoint_slope_residual".into(),
        rep.max_midpoint_slope_residual.into(),
    );
    body.insert("top_deriv_decays".into(), rep.top_deriv_decays.into());
    emit_json(body, manifest.finish(), out)
}

pub fn maxfun_demo(family: BuiltinFamily, point: f64, out: Option<&Path>) -> Result<(), AppError> {
    let mut manifest = Manifest::new("maxfun-demo");
    manifest
        .option("family", format!("{family:?}"))
        .option("point", point);

    let f = builtin_family(family);
    let (gamma, argmax) = f.eval_max(point)?;
    let active = f.active_set(point, maxfun::default_active_tol(gamma))?;
    let steps = maxfun::dyadic_schedule();
    let stationarity = f.stationarity_check(point, &steps, 1e-3)?;
    let left = f.quadratic_model_sided(point, Side::Left)?;
    let right = f.quadratic_model_sided(point, Side::Right)?;
    let grid: Vec<f64> = (4..=20)
        .flat_map(|i| {
            let e = (-(i as f64)).exp2();
            [e, -e]
        })
        .collect();
    // The two-sided quadratic model does not exist when the sided curvatures
    // disagree; report the expansion order only when it does.
    let expansion = f.expansion_residual(point, &grid).ok();

    let mut body = Map::new();
    body.insert("family".into(), format!("{family:?}").into());
    body.insert("point".into(), point.into());
    body.insert("value".into(), gamma.into());
    body.insert("argmax_members".into(), json!(argmax));
    body.insert("active_set".into(), json!(active.indices));
    body.insert("stationary".into(), stationarity.converges_to_zero.into());
    body.insert(
        "fd_quotients".into(),
        Value::Array(
            stationarity
                .fd_quotients
                .iter()
                .map(|q| json!({"step": q.step, "forward": q.forward, "backward": q.backward}))
                .collect(),
        ),
    );
    body.insert("curvature_left".into(), left.curvature.into());
    body.insert("curvature_right".into(), right.curvature.into());
    body.insert(
        "expansion_order".into(),
        expansion.map(|e| e.fitted_order).into(),
    );
    emit_json(body, manifest.finish(), out)
}

fn probe_kind(name: &str) -> Result<ExtremalKind, AppError> {
    match name {
        "lambda_max" => Ok(ExtremalKind::LambdaMax),
        "lambda_min" => Ok(ExtremalKind::LambdaMin),
        "spec_radius" => Ok(ExtremalKind::SpecRadius),
        "inner_spec_radius" => Ok(ExtremalKind::InnerSpecRadius),
        "sigma_max" => Ok(ExtremalKind::SigmaMax),
        "sigma_min" => Ok(ExtremalKind::SigmaMin),
        other => Err(AppError::usage(format!("unknown extremal kind '{other}'"))),
    }
}

fn probe_body(rep: &ProbeReport) -> Map<String, Value> {
    let rows = |table: &[eigfamily::FdRow]| {
        Value::Array(
            table
                .iter()
                .map(|r| {
                    json!({"step": r.step, "left": r.left, "right": r.right, "central": r.central})
                })
                .collect(),
        )
    };
    let mut body = Map::new();
    body.insert("point".into(), rep.point.into());
    body.insert("value".into(), rep.value.into());
    body.insert("smooth".into(), rep.smooth.into());
    body.insert(
        "status".into(),
        match rep.status {
            ProbeStatus::Smooth => "smooth",
            ProbeStatus::Nonsmooth => "nonsmooth",
            ProbeStatus::AssumptionViolated => "assumption_violated",
        }
        .into(),
    );
    body.insert("fd_first".into(), rows(&rep.fd_first));
    body.insert("fd_second".into(), rows(&rep.fd_second));
    body.insert("lipschitz_estimate".into(), rep.lipschitz_estimate.into());
    body.insert("cluster_size".into(), rep.cluster_size.into());
    body.insert("fd_floor".into(), rep.fd_floor.into());
    body
}

#[allow(clippy::too_many_arguments)]
pub fn probe(
    family_path: &Path,
    kind_name: &str,
    point: Option<f64>,
    bracket: Option<(f64, f64)>,
    max_order: u32,
    tol: f64,
    out: Option<&Path>,
) -> Result<(), AppError> {
    let text = fs::read_to_string(family_path)?;
    let mut manifest = Manifest::new("probe");
    manifest
        .option("family", family_path.display().to_string())
        .option("kind", kind_name)
        .option("max_order", max_order)
        .option("tol", tol);
    manifest.input(family_path, text.as_bytes());

    let kind = probe_kind(kind_name)?;
    let coeffs = coeffs_from_spec(&text)?;
    let f = if kind.needs_matrix_family() {
        ExtremalFunction::matrix(MatrixFamily::polynomial(coeffs)?, kind)?
    } else {
        ExtremalFunction::hermitian(HermitianFamily::polynomial(coeffs)?, kind)?
    };

    let mut refine_info = None;
    let x = match (point, bracket) {
        (Some(x), None) => x,
        (None, Some((a, b))) => {
            let rep = local_refine(&f, (a, b), tol)?;
            let x = rep.optimizers[0];
            refine_info = Some(report_body(&rep));
            x
        }
        _ => return Err(AppError::usage("give exactly one of --point or --bracket")),
    };
    let rep = smoothness_probe(&f, x, max_order)?;
    let mut body = probe_body(&rep);
    body.insert("kind".into(), kind_name.into());
    if let Some(info) = refine_info {
        body.insert("refine".into(), Value::Object(info));
    }
    emit_json(body, manifest.finish(), out)
}

fn load_system(path: &Path, manifest: &mut Manifest) -> Result<LtiSystem, AppError> {
    let text = fs::read_to_string(path)?;
    manifest.input(path, text.as_bytes());
    Ok(LtiSystem::from_json(&text)?)
}

fn parse_method(name: &str) -> Result<Method, AppError> {
    name.parse().map_err(AppError::from)
}

pub fn hinf(
    input: &Path,
    tol: f64,
    method: &str,
    report_format: &str,
    out: Option<&Path>,
) -> Result<(), AppError> {
    let mut manifest = Manifest::new("hinf");
    manifest
        .option("in", input.display().to_string())
        .option("tol", tol)
        .option("method", method);
    let sys = load_system(input, &mut manifest)?;
    let rep = hinf_norm_with(&sys, tol, parse_method(method)?)?;
    let mut extra = Map::new();
    extra.insert("problem".into(), "hinf_norm".into());
    emit_report(&rep, extra, &manifest, report_format, out)
}

pub fn numrad(
    input: &Path,
    tol: f64,
    form: &str,
    method: &str,
    report_format: &str,
    out: Option<&Path>,
) -> Result<(), AppError> {
    let mut manifest = Manifest::new("numrad");
    manifest
        .option("in", input.display().to_string())
        .option("tol", tol)
        .option("form", form)
        .option("method", method);
    let text = fs::read_to_string(input)?;
    manifest.input(input, text.as_bytes());
    let a = matrix_from_file_text(&text)?;
    let form = match form {
        "lambda" => RadiusForm::LambdaMax,
        "rho" => RadiusForm::SpecRadius,
        other => return Err(AppError::usage(format!("unknown form '{other}'"))),
    };
    let rep = numerical_radius_with(&a, tol, form, parse_method(method)?)?;
    let mut extra = Map::new();
    extra.insert("problem".into(), "numerical_radius".into());
    emit_report(&rep, extra, &manifest, report_format, out)
}

pub fn passivity(input: &Path, tol: f64, out: Option<&Path>) -> Result<(), AppError> {
    let mut manifest = Manifest::new("passivity");
    manifest
        .option("in", input.display().to_string())
        .option("tol", tol);
    let sys = load_system(input, &mut manifest)?;
    let res = passivity_margin(&sys, tol)?;
    let mut body = report_body(&res.report);
    body.insert("problem".into(), "passivity_margin".into());
    body.insert("margin".into(), res.margin.into());
    body.insert("gamma_at_margin".into(), res.gamma_at_margin.into());
    body.insert("gamma_at_zero".into(), res.gamma_at_zero.into());
    // Non-finite doubles have no JSON literal; flag the limit case.
    body.insert("critical_omega".into(), res.critical_omega.into());
    body.insert(
        "critical_omega_is_limit".into(),
        res.critical_omega.is_infinite().into(),
    );
    body.insert("sign_changes".into(), res.sign_changes.into());
    emit_json(body, manifest.finish(), out)
}

#[allow(clippy::too_many_arguments)]
pub fn gen_system(
    seed: u64,
    n: usize,
    m: usize,
    p: usize,
    stable: bool,
    out: Option<&Path>,
) -> Result<(), AppError> {
    if n == 0 || m == 0 || p == 0 {
        return Err(AppError::usage("dimensions must be at least 1"));
    }
    let mut manifest = Manifest::new("gen-system");
    manifest
        .option("seed", seed)
        .option("n", n)
        .option("m", m)
        .option("p", p)
        .option("stable", stable);
    let sys = if stable {
        random_system(seed, n, m, p)
    } else {
        random_system_raw(seed, n, m, p)
    };
    let body = match sys.to_json() {
        Value::Object(map) => map,
        _ => unreachable!(),
    };
    emit_json(body, manifest.finish(), out)
}

pub fn parse_bracket(spec: &str) -> Result<(f64, f64), AppError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(AppError::usage("--bracket takes 'a,b'"));
    }
    let a: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| AppError::usage("--bracket: bad number"))?;
    let b: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| AppError::usage("--bracket: bad number"))?;
    Ok((a, b))
}
