use std::sync::Arc;

use crate::error::MaxFunError;
use crate::function::MaxFunction;
use crate::scalar::{ScalarFunction, Side};

/// The small illustrative families used throughout the library and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinFamily {
    /// `f1 = -t^2 (t <= 0) / -3t^2 (t > 0)` together with `f2 = -2t^2`:
    /// both C^1, but the max has mismatched one-sided curvature at 0.
    TwoPieceC1,
    /// `f1 = t^8 (sin(1/t) - 1)` and `f2 = t^8 (sin(1/(2t)) - 1)`: C^3 but
    /// not C^4 at 0, crossing infinitely often near the (non-isolated)
    /// maximizer 0.
    RemarkSinPair,
    /// The single member `-|t|`: continuity alone gives no differentiability
    /// at the maximizer.
    NegAbs,
}

impl std::str::FromStr for BuiltinFamily {
    type Err = MaxFunError;

    fn from_str(s: &str) -> Result<Self, MaxFunError> {
        match s {
            "two_piece_c1" => Ok(BuiltinFamily::TwoPieceC1),
            "remark_sin_pair" => Ok(BuiltinFamily::RemarkSinPair),
            "neg_abs" => Ok(BuiltinFamily::NegAbs),
            other => Err(MaxFunError::argument(format!("unknown family '{other}'"))),
        }
    }
}

pub fn builtin_family(name: BuiltinFamily) -> MaxFunction {
    let domain = (-1.0, 1.0);
    let members: Vec<Arc<dyn ScalarFunction>> = match name {
        BuiltinFamily::TwoPieceC1 => vec![
            Arc::new(TwoPieceQuad),
            Arc::new(ScaledQuad { scale: 2.0 }),
        ],
        BuiltinFamily::RemarkSinPair => vec![
            Arc::new(SinEnvelope { b: 1.0 }),
            Arc::new(SinEnvelope { b: 0.5 }),
        ],
        BuiltinFamily::NegAbs => vec![Arc::new(NegAbs)],
    };
    MaxFunction::new(members, domain).expect("builtin families are well formed")
}

/// `-t^2` for `t <= 0`, `-3t^2` for `t > 0`.
struct TwoPieceQuad;

impl ScalarFunction for TwoPieceQuad {
    fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            -t * t
        } else {
            -3.0 * t * t
        }
    }

    fn deriv_sided(&self, t: f64, order: u32, side: Side) -> Result<f64, MaxFunError> {
        let c = if t < 0.0 || (t == 0.0 && side == Side::Left) {
            1.0
        } else {
            3.0
        };
        Ok(match order {
            0 => self.eval(t),
            1 => -2.0 * c * t,
            2 => -2.0 * c,
            3 => 0.0,
            o => {
                return Err(MaxFunError::Capability {
                    point: t,
                    order: o,
                    reason: "order above 3 not implemented".into(),
                })
            }
        })
    }

    fn smoothness_class(&self) -> u32 {
        1
    }
}

/// `-c t^2`.
struct ScaledQuad {
    scale: f64,
}

impl ScalarFunction for ScaledQuad {
    fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn eval(&self, t: f64) -> f64 {
        -self.scale * t * t
    }

    fn deriv_sided(&self, t: f64, order: u32, _side: Side) -> Result<f64, MaxFunError> {
        Ok(match order {
            0 => self.eval(t),
            1 => -2.0 * self.scale * t,
            2 => -2.0 * self.scale,
            _ => 0.0,
        })
    }

    fn smoothness_class(&self) -> u32 {
        u32::MAX
    }
}

struct NegAbs;

impl ScalarFunction for NegAbs {
    fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn eval(&self, t: f64) -> f64 {
        -t.abs()
    }

    fn deriv_sided(&self, t: f64, order: u32, side: Side) -> Result<f64, MaxFunError> {
        let sign = if t < 0.0 || (t == 0.0 && side == Side::Left) {
            1.0
        } else {
            -1.0
        };
        Ok(match order {
            0 => self.eval(t),
            1 => sign,
            _ => 0.0,
        })
    }

    fn smoothness_class(&self) -> u32 {
        0
    }
}

/// `t^8 (sin(b/t) - 1)` with value and first three derivatives zero at 0.
struct SinEnvelope {
    b: f64,
}

impl ScalarFunction for SinEnvelope {
    fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn eval(&self, t: f64) -> f64 {
        if t == 0.0 {
            0.0
        } else {
            t.powi(8) * ((self.b / t).sin() - 1.0)
        }
    }

    fn deriv_sided(&self, t: f64, order: u32, _side: Side) -> Result<f64, MaxFunError> {
        if order > 3 {
            return Err(MaxFunError::Capability {
                point: t,
                order,
                reason: "C^3 only".into(),
            });
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        let b = self.b;
        let s = (b / t).sin();
        let c = (b / t).cos();
        Ok(match order {
            0 => self.eval(t),
            1 => 8.0 * t.powi(7) * (s - 1.0) - b * t.powi(6) * c,
            2 => 56.0 * t.powi(6) * (s - 1.0) - 14.0 * b * t.powi(5) * c - b * b * t.powi(4) * s,
            3 => {
                336.0 * t.powi(5) * (s - 1.0) - 126.0 * b * t.powi(4) * c
                    - 18.0 * b * b * t.powi(3) * s
                    + b.powi(3) * t * t * c
            }
            _ => unreachable!(),
        })
    }

    fn smoothness_class(&self) -> u32 {
        3
    }
}
