mod commands;
mod errors;
mod families;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use counterex::{Figure, SlopeKind};
use maxfun::BuiltinFamily;

use errors::AppError;

#[derive(Parser)]
#[command(
    name = "maxsmooth",
    version,
    about = "Smoothness of pointwise maxima: a piecewise-polynomial counterexample, \
             eigenvalue extremal functions, and frequency-domain solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and check the piecewise degree-9 construction
    Counterexample {
        #[command(subcommand)]
        action: CounterexAction,
    },
    /// Evaluate a built-in finite max family at a point
    MaxfunDemo {
        /// two_piece_c1 | remark_sin_pair | neg_abs
        #[arg(long)]
        family: String,
        /// Evaluation point
        #[arg(long, default_value_t = 0.0)]
        point: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probe an eigenvalue or singular-value extremal function for smoothness
    Probe {
        /// JSON family spec with a "coeffs" array of matrices
        #[arg(long)]
        family: PathBuf,
        /// lambda_max | lambda_min | spec_radius | inner_spec_radius | sigma_max | sigma_min
        #[arg(long)]
        kind: String,
        /// Probe at this point
        #[arg(long)]
        point: Option<f64>,
        /// Maximize over 'a,b' first, then probe at the maximizer
        #[arg(long)]
        bracket: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_order: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// H-infinity norm of a stable LTI system
    Hinf {
        /// System JSON file with A, B, C, D
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = solvers::DEFAULT_TOL)]
        tol: f64,
        /// levelset | grid
        #[arg(long, default_value = "levelset")]
        method: String,
        /// json | csv
        #[arg(long, default_value = "json")]
        report: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical radius of a square complex matrix
    Numrad {
        /// Matrix JSON file with an A entry
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = solvers::DEFAULT_TOL)]
        tol: f64,
        /// lambda (field-of-values rotation) | rho (spectral radius of the rotation)
        #[arg(long, default_value = "lambda")]
        form: String,
        /// levelset | grid
        #[arg(long, default_value = "levelset")]
        method: String,
        /// json | csv
        #[arg(long, default_value = "json")]
        report: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Passivity margin of a square stable LTI system
    Passivity {
        /// System JSON file with A, B, C, D
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = solvers::DEFAULT_TOL_XI)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random LTI system (stable by default)
    GenSystem {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        /// Skip the stabilizing spectral shift
        #[arg(long)]
        unstable: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CounterexAction {
    /// Smoothness and isolated-maximum evidence as a JSON report
    Verify {
        /// a | b | two | q=N
        #[arg(long, default_value = "a")]
        sk: String,
        #[arg(long, default_value_t = 25)]
        kmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sampled curves as CSV
    Plot {
        /// f1_only | f1_and_f2 | derivs_a | derivs_b | fmax_and_derivs
        #[arg(long)]
        figure: String,
        /// a | b | two | q=N
        #[arg(long, default_value = "a")]
        sk: String,
        #[arg(long, default_value_t = 20)]
        kmax: u32,
        /// Samples per dyadic interval
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rebuild the construction at a different contact order
    Generalize {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 25)]
        kmax: u32,
        /// Override the slope sequence: a | b | two | q=N
        #[arg(long)]
        sk: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Counterexample { action } => match action {
            CounterexAction::Verify { sk, kmax, out } => {
                let sk: SlopeKind = sk.parse()?;
                commands::counterexample_verify(sk, kmax, out.as_deref())
            }
            CounterexAction::Plot { figure, sk, kmax, resolution, out } => {
                let sk: SlopeKind = sk.parse()?;
                let figure: Figure = figure.parse()?;
                commands::counterexample_plot(sk, kmax, figure, resolution, &out)
            }
            CounterexAction::Generalize { q, kmax, sk, out } => {
                let sk = sk.map(|s| s.parse::<SlopeKind>()).transpose()?;
                commands::counterexample_generalize(q, kmax, sk, out.as_deref())
            }
        },
        Command::MaxfunDemo { family, point, out } => {
            let family: BuiltinFamily = family.parse()?;
            commands::maxfun_demo(family, point, out.as_deref())
        }
        Command::Probe { family, kind, point, bracket, max_order, tol, out } => {
            let bracket = bracket.map(|s| commands::parse_bracket(&s)).transpose()?;
            commands::probe(
                &family,
                &kind,
                point,
                bracket,
                max_order,
                tol,
                out.as_deref(),
            )
        }
        Command::Hinf { input, tol, method, report, out } => {
            commands::hinf(&input, tol, &method, &report, out.as_deref())
        }
        Command::Numrad { input, tol, form, method, report, out } => {
            commands::numrad(&input, tol, &form, &method, &report, out.as_deref())
        }
        Command::Passivity { input, tol, out } => {
            commands::passivity(&input, tol, out.as_deref())
        }
        Command::GenSystem { seed, n, m, p, unstable, out } => {
            commands::gen_system(seed, n, m, p, !unstable, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
