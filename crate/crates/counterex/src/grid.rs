use num_rational::BigRational;

use crate::rat::{int, pow2};

/// Dyadic breakpoints `l_k = 2^-k` for `k = 0..=k_max`, with interval
/// midpoints `t_k = 3 * 2^-(k+2)`.
#[derive(Debug, Clone)]
pub struct DyadicGrid {
    pub k_max: u32,
}

impl DyadicGrid {
    pub fn new(k_max: u32) -> Self {
        DyadicGrid { k_max }
    }

    /// `l_k = 2^-k`, exactly representable.
    pub fn breakpoint(&self, k: u32) -> f64 {
        (-(k as f64)).exp2()
    }

    /// Midpoint of `[l_{k+1}, l_k]`: `t_k = 3 * 2^-(k+2)`.
    pub fn midpoint(&self, k: u32) -> f64 {
        3.0 * (-(k as f64 + 2.0)).exp2()
    }

    pub fn breakpoint_exact(&self, k: u32) -> BigRational {
        pow2(-(k as i64))
    }

    pub fn midpoint_exact(&self, k: u32) -> BigRational {
        int(3) * pow2(-(k as i64) - 2)
    }

    /// Smallest materialized point `l_{k_max + 1}`.
    pub fn floor(&self) -> f64 {
        self.breakpoint(self.k_max + 1)
    }

    /// Index of the piece whose interval `[l_{k+1}, l_k]` contains `t`,
    /// assigning breakpoints to the piece on their right (smaller `k`).
    /// Requires `0 < t <= 1`.
    pub fn piece_for(&self, t: f64) -> Option<u32> {
        if t <= 0.0 || t > 1.0 {
            return None;
        }
        let k = (-t.log2().floor() - 1.0).max(0.0) as u32;
        if t < self.floor() {
            return None;
        }
        Some(k.min(self.k_max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halving_is_exact() {
        let g = DyadicGrid::new(40);
        for k in 0..=40 {
            assert_eq!(g.breakpoint(k + 1) * 2.0, g.breakpoint(k));
            assert_eq!(
                g.midpoint(k),
                0.5 * (g.breakpoint(k + 1) + g.breakpoint(k))
            );
        }
    }

    #[test]
    fn piece_lookup_prefers_right_piece_at_breakpoints() {
        let g = DyadicGrid::new(10);
        assert_eq!(g.piece_for(1.0), Some(0));
        assert_eq!(g.piece_for(0.5), Some(0)); // l_1 belongs to [l_1, l_0]
        assert_eq!(g.piece_for(0.25), Some(1));
        assert_eq!(g.piece_for(0.6), Some(0));
        assert_eq!(g.piece_for(0.3), Some(1));
        assert_eq!(g.piece_for(g.midpoint(7)), Some(7));
        assert_eq!(g.piece_for(0.0), None);
        assert_eq!(g.piece_for(1.5), None);
        assert_eq!(g.piece_for(1e-9), None); // below the floor
    }
}
