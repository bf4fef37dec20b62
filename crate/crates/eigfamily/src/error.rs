#[derive(Debug, thiserror::Error)]
pub enum EigError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error("{kind} requires a {needs} family")]
    KindMismatch { kind: &'static str, needs: &'static str },
}

impl EigError {
    pub fn argument(msg: impl Into<String>) -> Self {
        EigError::Argument(msg.into())
    }

    pub fn evaluation(msg: impl Into<String>) -> Self {
        EigError::Evaluation(msg.into())
    }
}
