use thiserror::Error;

#[derive(Debug, Error)]
pub enum CounterexError {
    #[error("point {point} outside domain [-1, 1]")]
    Domain { point: f64 },

    #[error("derivative order {order} exceeds contact order {max}")]
    Order { order: u32, max: u32 },

    #[error("t = {point} lies below the materialized grid floor 2^-{floor}; raise k_max")]
    Resolution { point: f64, floor: u32 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("singular interpolation system for piece k = {k}")]
    Singular { k: u32 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CounterexError {
    pub fn argument(msg: impl Into<String>) -> Self {
        CounterexError::Argument(msg.into())
    }
}
