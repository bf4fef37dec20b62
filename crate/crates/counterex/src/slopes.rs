use num_rational::BigRational;
use num_traits::One;

use crate::error::CounterexError;
use crate::rat::{int, pow2};

/// Midpoint slope multiplier sequence `s_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeKind {
    /// `s_k = 1 + 2^-2k`: fast enough decay for third-derivative continuity
    /// at 0 (the production choice).
    AppendixA,
    /// `s_k = 1 + 2^-k`: decays too slowly; third derivative blows up at 0.
    AppendixB,
    /// `s_k = 2`: no decay at all; used for easily visible plots.
    ConstantTwo,
    /// The conjectured sequence for contact order `q`:
    /// `1 + 2^-(k+1)` when `q = 1`, `1 + 2^-(q-1)k` when `q >= 2`.
    GeneralQ(u32),
}

impl SlopeKind {
    pub fn slope_exact(&self, k: u32) -> BigRational {
        let k = k as i64;
        match *self {
            SlopeKind::AppendixA => BigRational::one() + pow2(-2 * k),
            SlopeKind::AppendixB => BigRational::one() + pow2(-k),
            SlopeKind::ConstantTwo => int(2),
            SlopeKind::GeneralQ(1) => BigRational::one() + pow2(-(k + 1)),
            SlopeKind::GeneralQ(q) => BigRational::one() + pow2(-((q as i64 - 1) * k)),
        }
    }

    pub fn slope(&self, k: u32) -> f64 {
        match *self {
            SlopeKind::AppendixA => 1.0 + (-2.0 * k as f64).exp2(),
            SlopeKind::AppendixB => 1.0 + (-(k as f64)).exp2(),
            SlopeKind::ConstantTwo => 2.0,
            SlopeKind::GeneralQ(1) => 1.0 + (-(k as f64) - 1.0).exp2(),
            SlopeKind::GeneralQ(q) => 1.0 + (-((q as f64 - 1.0) * k as f64)).exp2(),
        }
    }

    /// Derivative-contact order of the construction this sequence targets.
    pub fn contact_order(&self) -> u32 {
        match *self {
            SlopeKind::GeneralQ(q) => q,
            _ => 3,
        }
    }

    pub fn converges_to_one(&self) -> bool {
        !matches!(self, SlopeKind::ConstantTwo)
    }
}

impl std::str::FromStr for SlopeKind {
    type Err = CounterexError;

    fn from_str(s: &str) -> Result<Self, CounterexError> {
        match s {
            "a" => Ok(SlopeKind::AppendixA),
            "b" => Ok(SlopeKind::AppendixB),
            "two" => Ok(SlopeKind::ConstantTwo),
            other => {
                if let Some(q) = other.strip_prefix("q=") {
                    let q: u32 = q
                        .parse()
                        .map_err(|_| CounterexError::argument(format!("bad slope kind '{other}'")))?;
                    if q == 0 || q > 5 {
                        return Err(CounterexError::argument("q must be in 1..=5"));
                    }
                    Ok(SlopeKind::GeneralQ(q))
                } else {
                    Err(CounterexError::argument(format!("bad slope kind '{other}'")))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn sequences_exceed_one_and_converge() {
        for kind in [
            SlopeKind::AppendixA,
            SlopeKind::AppendixB,
            SlopeKind::ConstantTwo,
            SlopeKind::GeneralQ(1),
            SlopeKind::GeneralQ(4),
        ] {
            for k in 0..30 {
                let s = kind.slope_exact(k);
                assert!(s > BigRational::one());
                assert_eq!(s.to_f64().unwrap(), kind.slope(k));
            }
            if kind.converges_to_one() {
                assert!(kind.slope(60) - 1.0 < 1e-9);
            }
        }
    }

    #[test]
    fn general_q3_matches_appendix_a() {
        for k in 0..20 {
            assert_eq!(
                SlopeKind::GeneralQ(3).slope_exact(k),
                SlopeKind::AppendixA.slope_exact(k)
            );
        }
    }

    #[test]
    fn parsing() {
        assert_eq!("a".parse::<SlopeKind>().unwrap(), SlopeKind::AppendixA);
        assert_eq!("q=2".parse::<SlopeKind>().unwrap(), SlopeKind::GeneralQ(2));
        assert!("q=9".parse::<SlopeKind>().is_err());
        assert!("zzz".parse::<SlopeKind>().is_err());
    }
}
