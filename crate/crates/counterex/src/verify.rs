use crate::error::CounterexError;
use crate::function::CounterexampleFunction;
use crate::piece::Z;
use crate::slopes::SlopeKind;

/// Points per interval for sup / monotonicity grid sweeps. A degree-9 piece
/// has at most 8 critical points, so this cannot miss a sign excursion of
/// meaningful width on a 2:1 interval.
pub const GRID_POINTS: usize = 1000;

/// Smoothness evidence over a breakpoint range.
#[derive(Debug, Clone)]
pub struct C3Report {
    /// `(k, order, |jump|)` at breakpoint `l_k` between pieces `k` and
    /// `k - 1`, for derivative orders `0..=q`.
    pub per_breakpoint_jumps: Vec<(u32, u32, f64)>,
    /// `(k, sup over grid of |f^(q)|)` on `[l_{k+1}, l_k]`.
    pub sup_top_deriv_per_interval: Vec<(u32, f64)>,
    /// `(k, sup over grid of |f' + 2t|)`: persistent first-derivative
    /// mismatch, the visible failure mode when `s_k` does not converge to 1.
    pub sup_first_deriv_mismatch: Vec<(u32, f64)>,
    /// Sup of the top derivative decays to below 5% of its value at the
    /// start of the range.
    pub c3_plausible: bool,
}

impl CounterexampleFunction {
    /// Grid-based smoothness evidence: derivative jumps across breakpoints
    /// and the per-interval sup of the top-order derivative.
    pub fn verify_c3(&self, k_start: u32, k_end: u32) -> Result<C3Report, CounterexError> {
        if k_end > self.grid().k_max || k_start >= k_end {
            return Err(CounterexError::argument(
                "need k_start < k_end <= k_max of the materialized grid",
            ));
        }
        let q = self.contact_order();
        let mut per_breakpoint_jumps = Vec::new();
        for k in k_start.max(1)..=k_end {
            let lk = self.grid().breakpoint(k);
            for order in 0..=q {
                let below = self.piece(k).eval_deriv(lk, order);
                let above = self.piece(k - 1).eval_deriv(lk, order);
                per_breakpoint_jumps.push((k, order, (below - above).abs()));
            }
        }
        let mut sup_top = Vec::new();
        let mut sup_mismatch = Vec::new();
        for k in k_start..=k_end {
            let (mut top, mut mis) = (0.0f64, 0.0f64);
            for (t, _) in interval_grid(self, k) {
                top = top.max(self.piece(k).eval_deriv(t, q).abs());
                mis = mis.max((self.piece(k).eval_deriv(t, 1) + 2.0 * t).abs());
            }
            sup_top.push((k, top));
            sup_mismatch.push((k, mis));
        }
        let first = sup_top.first().map(|&(_, s)| s).unwrap_or(0.0);
        let last = sup_top.last().map(|&(_, s)| s).unwrap_or(0.0);
        let c3_plausible = last <= 0.05 * first;
        Ok(C3Report {
            per_breakpoint_jumps,
            sup_top_deriv_per_interval: sup_top,
            sup_first_deriv_mismatch: sup_mismatch,
            c3_plausible,
        })
    }

    /// Grid test for the isolated-maximizer property: every piece in
    /// `k_start..=k_end` strictly decreases along its interval, and `f_1 < 0`
    /// on a grid over `[l_{k_end+1}, 1]`.
    pub fn verify_isolated_max(&self, k_start: u32, k_end: u32) -> Result<bool, CounterexError> {
        if k_end > self.grid().k_max || k_start > k_end {
            return Err(CounterexError::argument("bad k range"));
        }
        for k in k_start..=k_end {
            let mut prev = f64::INFINITY;
            for (t, first) in interval_grid(self, k) {
                let v = self.piece(k).eval_deriv(t, 0);
                if !first && v >= prev {
                    return Ok(false);
                }
                prev = v;
            }
        }
        for k in 0..=k_end {
            for (t, _) in interval_grid(self, k) {
                if self.eval_f(t, 0)? >= 0.0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn interval_grid(
    f: &CounterexampleFunction,
    k: u32,
) -> impl Iterator<Item = (f64, bool)> + '_ {
    let lo = f.grid().breakpoint(k + 1);
    let hi = f.grid().breakpoint(k);
    (0..GRID_POINTS).map(move |i| {
        let t = lo + (hi - lo) * i as f64 / (GRID_POINTS - 1) as f64;
        (t, i == 0)
    })
}

/// Analytic upper bound on the rescaled piece derivative over its interval:
/// negative values certify that the piece is strictly decreasing.
pub fn isolation_bound(k: u32) -> f64 {
    let z2 = Z[2] as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for j in [1usize, 3, 5, 7, 9] {
        odd += j as f64 * Z[j] as f64 * (1.0 - j as f64).exp2();
    }
    for j in [4usize, 6, 8] {
        even += j as f64 * Z[j] as f64 * (1.0 - j as f64).exp2() * (j as f64 - 1.0).exp2();
    }
    (-3.0 * k as f64).exp2() * ((z2 - (2.0 * k as f64).exp2()) + odd + even)
}

/// Findings of the degree-`2q+3` generalization experiment; descriptive only.
#[derive(Debug, Clone)]
pub struct QReport {
    pub q: u32,
    pub slope_kind: SlopeKind,
    /// Max breakpoint jump per derivative order `0..=q`.
    pub max_jump_per_order: Vec<f64>,
    /// `(k, sup |f^(q)|)` per interval.
    pub sup_top_deriv_per_interval: Vec<(u32, f64)>,
    /// Max residual of the midpoint slope constraint `p_k'(t_k) = s_k (-2 t_k)`.
    pub max_midpoint_slope_residual: f64,
    /// Sup of the top derivative decays across the range.
    pub top_deriv_decays: bool,
}

/// Build the degree-`2q+3` analogue with the conjectured slope sequence (or
/// an explicit override) and collect the same grid evidence as `verify_c3`.
pub fn generalize_q(
    q: u32,
    k_start: u32,
    k_end: u32,
    slope_override: Option<SlopeKind>,
) -> Result<QReport, CounterexError> {
    if !(1..=5).contains(&q) {
        return Err(CounterexError::argument("q must be in 1..=5"));
    }
    let kind = slope_override.unwrap_or(SlopeKind::GeneralQ(q));
    let f = CounterexampleFunction::new(kind, k_end)?;
    let report = f.verify_c3(k_start, k_end)?;
    let mut max_jump_per_order = vec![0.0f64; q as usize + 1];
    for &(_, order, jump) in &report.per_breakpoint_jumps {
        let slot = &mut max_jump_per_order[order as usize];
        *slot = slot.max(jump);
    }
    let mut max_midpoint_slope_residual = 0.0f64;
    for k in k_start..=k_end {
        let tk = f.grid().midpoint(k);
        let res = f.piece(k).eval_deriv(tk, 1) - kind.slope(k) * (-2.0 * tk);
        max_midpoint_slope_residual = max_midpoint_slope_residual.max(res.abs());
    }
    Ok(QReport {
        q,
        slope_kind: kind,
        max_jump_per_order,
        sup_top_deriv_per_interval: report.sup_top_deriv_per_interval,
        max_midpoint_slope_residual,
        top_deriv_decays: report.c3_plausible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_a_is_c3_plausible() {
        let f = CounterexampleFunction::new(SlopeKind::AppendixA, 20).unwrap();
        let rep = f.verify_c3(5, 20).unwrap();
        assert!(rep.c3_plausible);
        for &(k, order, jump) in &rep.per_breakpoint_jumps {
            assert!(jump <= 1e-8, "jump {jump} at k={k} order={order}");
        }
    }

    #[test]
    fn appendix_b_is_not_c3_plausible() {
        let f = CounterexampleFunction::new(SlopeKind::AppendixB, 20).unwrap();
        let rep = f.verify_c3(5, 20).unwrap();
        assert!(!rep.c3_plausible);
        // Sup of the third derivative does not decay below half its initial value.
        let first = rep.sup_top_deriv_per_interval.first().unwrap().1;
        let last = rep.sup_top_deriv_per_interval.last().unwrap().1;
        assert!(last > 0.5 * first, "{last} vs {first}");
    }

    #[test]
    fn constant_two_fails_with_persistent_slope_mismatch() {
        let f = CounterexampleFunction::new(SlopeKind::ConstantTwo, 15).unwrap();
        let rep = f.verify_c3(5, 15).unwrap();
        assert!(!rep.c3_plausible);
        // The first-derivative mismatch scales like the midpoint: sup of
        // |f' + 2t| stays at a fixed positive multiple of t_k.
        for &(k, mis) in &rep.sup_first_deriv_mismatch {
            let tk = f.grid().midpoint(k);
            assert!(mis >= 2.0 * tk * 0.9, "k={k}: {mis}");
        }
    }

    #[test]
    fn isolation_bound_signs() {
        assert!(isolation_bound(12) > 0.0);
        for k in 13..=30 {
            assert!(isolation_bound(k) < 0.0, "k = {k}");
        }
        // z_2 - 2^2k first goes negative at k = 10.
        assert!(Z[2] as f64 - (18.0f64).exp2() > 0.0);
        assert!(Z[2] as f64 - (20.0f64).exp2() < 0.0);
    }

    #[test]
    fn bound_dominates_grid_maximum() {
        let f = CounterexampleFunction::new(SlopeKind::AppendixA, 21).unwrap();
        for k in [13u32, 20] {
            let bound = isolation_bound(k);
            let mut grid_max = f64::NEG_INFINITY;
            let lo = f.grid().breakpoint(k + 1);
            let hi = f.grid().breakpoint(k);
            for i in 0..GRID_POINTS {
                let t = lo + (hi - lo) * i as f64 / (GRID_POINTS - 1) as f64;
                grid_max = grid_max.max(f.piece(k).eval_deriv(t, 1));
            }
            assert!(grid_max <= bound + 1e-12, "k={k}: {grid_max} vs {bound}");
        }
    }

    #[test]
    fn isolated_maximizer_grid_test() {
        let f = CounterexampleFunction::new(SlopeKind::AppendixA, 31).unwrap();
        assert!(f.verify_isolated_max(13, 30).unwrap());
        let two = CounterexampleFunction::new(SlopeKind::ConstantTwo, 11).unwrap();
        assert!(two.verify_isolated_max(0, 10).unwrap());
        // The appendix_b slopes still run; only check that the sweep completes.
        let b = CounterexampleFunction::new(SlopeKind::AppendixB, 31).unwrap();
        let _ = b.verify_isolated_max(13, 30).unwrap();
    }

    #[test]
    fn generalized_construction_reports() {
        // q = 3 reproduces the appendix_a behavior.
        let rep = generalize_q(3, 5, 15, None).unwrap();
        assert!(rep.top_deriv_decays);
        // q = 1: order-1 jumps at breakpoints stay tiny by construction.
        let rep = generalize_q(1, 5, 15, None).unwrap();
        assert!(rep.max_jump_per_order.iter().all(|&j| j <= 1e-8));
        assert!(rep.top_deriv_decays);
        // q = 2: midpoint slope constraint row holds.
        let rep = generalize_q(2, 5, 15, None).unwrap();
        assert!(rep.max_midpoint_slope_residual <= 1e-10);
    }
}
