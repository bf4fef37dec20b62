use thiserror::Error;

#[derive(Debug, Error)]
pub enum MaxFunError {
    #[error("point {point} outside domain [{lo}, {hi}]")]
    Domain { point: f64, lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("derivative of order {order} unavailable at t = {point}: {reason}")]
    Capability {
        point: f64,
        order: u32,
        reason: String,
    },
}

impl MaxFunError {
    pub fn argument(msg: impl Into<String>) -> Self {
        MaxFunError::Argument(msg.into())
    }
}
