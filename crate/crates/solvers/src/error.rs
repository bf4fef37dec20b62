#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("state matrix is not asymptotically stable (spectral abscissa {abscissa:.3e})")]
    Unstable { abscissa: f64 },
    #[error("transfer function pole at omega = {omega}")]
    Pole { omega: f64 },
    #[error("system is not strictly passive at xi = 0 (gamma(0) = {gamma0:.6e})")]
    NotStrictlyPassive { gamma0: f64 },
    #[error("malformed system description: {0}")]
    Format(String),
    #[error(transparent)]
    Eig(#[from] eigfamily::EigError),
}

impl SolverError {
    pub fn argument(msg: impl Into<String>) -> Self {
        SolverError::Argument(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        SolverError::Format(msg.into())
    }
}
