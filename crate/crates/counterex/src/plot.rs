use std::io::Write;

use crate::error::CounterexError;
use crate::function::CounterexampleFunction;
use crate::slopes::SlopeKind;

/// Which figure's data to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    F1Only,
    F1AndF2,
    /// First three derivatives of `f_1` with `s_k = 1 + 2^-k`.
    DerivsA,
    /// First three derivatives of `f_1` with `s_k = 1 + 2^-2k`.
    DerivsB,
    FmaxAndDerivs,
}

impl std::str::FromStr for Figure {
    type Err = CounterexError;

    fn from_str(s: &str) -> Result<Self, CounterexError> {
        match s {
            "f1_only" => Ok(Figure::F1Only),
            "f1_and_f2" => Ok(Figure::F1AndF2),
            "derivs_a" => Ok(Figure::DerivsA),
            "derivs_b" => Ok(Figure::DerivsB),
            "fmax_and_derivs" => Ok(Figure::FmaxAndDerivs),
            other => Err(CounterexError::argument(format!("unknown figure '{other}'"))),
        }
    }
}

/// Tag for the branch evaluated at argument `u` (as fed to `f_1`).
fn piece_tag(f: &CounterexampleFunction, u: f64) -> &'static str {
    if u <= 0.0 {
        return "tail";
    }
    match f.grid().piece_for(u) {
        Some(k) if k % 2 == 0 => "pk_even",
        Some(_) => "pk_odd",
        None => "tail",
    }
}

fn sample_points(f: &CounterexampleFunction, lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    let floor = f.grid().floor();
    (0..resolution)
        .map(|i| lo + (hi - lo) * i as f64 / (resolution - 1) as f64)
        .filter(|t| t.abs() >= floor || *t == 0.0)
        .collect()
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Emit CSV rows sufficient to re-plot the named figure. The derivative
/// figures construct their own slope sequence; the others use `fnc` as given.
pub fn emit_plot_data(
    fnc: &CounterexampleFunction,
    figure: Figure,
    resolution: usize,
    sink: &mut dyn Write,
) -> Result<(), CounterexError> {
    if resolution < 2 {
        return Err(CounterexError::argument("resolution must be at least 2"));
    }
    match figure {
        Figure::F1Only => {
            writeln!(sink, "t,value,piece_tag")?;
            for t in sample_points(fnc, -1.0, 1.0, resolution) {
                writeln!(
                    sink,
                    "{},{},{}",
                    num(t),
                    num(fnc.eval_f(t, 0)?),
                    piece_tag(fnc, t)
                )?;
            }
        }
        Figure::F1AndF2 => {
            writeln!(sink, "t,series,value,piece_tag")?;
            for t in sample_points(fnc, -1.0, 1.0, resolution) {
                writeln!(
                    sink,
                    "{},f1,{},{}",
                    num(t),
                    num(fnc.eval_f(t, 0)?),
                    piece_tag(fnc, t)
                )?;
                writeln!(
                    sink,
                    "{},f2,{},{}",
                    num(t),
                    num(fnc.eval_f(-t, 0)?),
                    piece_tag(fnc, -t)
                )?;
            }
        }
        Figure::DerivsA | Figure::DerivsB => {
            let kind = if figure == Figure::DerivsA {
                SlopeKind::AppendixB // s_k = 1 + 2^-k
            } else {
                SlopeKind::AppendixA // s_k = 1 + 2^-2k
            };
            let f = CounterexampleFunction::new(kind, fnc.grid().k_max)?;
            writeln!(sink, "t,order,value,piece_tag")?;
            for t in sample_points(&f, -1.0, 1.0, resolution) {
                for order in 1..=3u32 {
                    writeln!(
                        sink,
                        "{},{},{},{}",
                        num(t),
                        order,
                        num(f.eval_f(t, order)?),
                        piece_tag(&f, t)
                    )?;
                }
            }
        }
        Figure::FmaxAndDerivs => {
            writeln!(sink, "t,series,value,piece_tag")?;
            for t in sample_points(fnc, -1.0, 1.0, resolution) {
                // Derivatives of the max follow the active member.
                let active = if fnc.eval_f(t, 0)? >= fnc.eval_f(-t, 0)? {
                    t
                } else {
                    -t
                };
                let tag = piece_tag(fnc, active);
                writeln!(sink, "{},fmax,{},{}", num(t), num(fnc.eval_fmax(t)?), tag)?;
                let sign = if active == t { 1.0 } else { -1.0 };
                writeln!(
                    sink,
                    "{},d1,{},{}",
                    num(t),
                    num(sign * fnc.eval_f(active, 1)?),
                    tag
                )?;
                writeln!(
                    sink,
                    "{},d2,{},{}",
                    num(t),
                    num(fnc.eval_f(active, 2)?),
                    tag
                )?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(figure: Figure, kind: SlopeKind, resolution: usize) -> Vec<String> {
        let f = CounterexampleFunction::new(kind, 20).unwrap();
        let mut buf = Vec::new();
        emit_plot_data(&f, figure, resolution, &mut buf).unwrap();
        String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(String::from)
            .collect()
    }

    #[test]
    fn f1_only_row_count_and_header() {
        let lines = rows(Figure::F1Only, SlopeKind::ConstantTwo, 10_000);
        assert_eq!(lines[0], "t,value,piece_tag");
        // A handful of samples fall below the grid floor and are skipped.
        assert!(lines.len() > 9_900 && lines.len() <= 10_001);
        let cols: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(cols.len(), 3);
        assert_eq!(cols[2], "tail");
    }

    #[test]
    fn tail_second_derivative_is_minus_two() {
        let lines = rows(Figure::FmaxAndDerivs, SlopeKind::AppendixA, 101);
        for line in &lines[1..] {
            let cols: Vec<&str> = line.split(',').collect();
            if cols[1] == "d2" && cols[3] == "tail" {
                let v: f64 = cols[2].parse().unwrap();
                assert_eq!(v, -2.0);
            }
        }
    }

    #[test]
    fn deriv_figures_are_rectangular() {
        for fig in [Figure::DerivsA, Figure::DerivsB] {
            let lines = rows(fig, SlopeKind::AppendixA, 101);
            assert_eq!(lines[0], "t,order,value,piece_tag");
            assert!(lines[1..].iter().all(|l| l.split(',').count() == 4));
        }
    }

    #[test]
    fn values_render_with_17_significant_digits() {
        let third = 1.0 / 3.0;
        let s = num(third);
        assert_eq!(s.parse::<f64>().unwrap(), third);
    }
}
