use counterex::CounterexError;
use eigfamily::EigError;
use maxfun::MaxFunError;
use solvers::SolverError;

/// Process-level error with its exit code: 2 for usage/precondition
/// problems, 1 for numerical or I/O failures.
#[derive(Debug)]
pub struct AppError {
    pub code: i32,
    pub message: String,
}

impl AppError {
    pub fn usage(msg: impl Into<String>) -> Self {
        AppError { code: 2, message: msg.into() }
    }

    pub fn failure(msg: impl Into<String>) -> Self {
        AppError { code: 1, message: msg.into() }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::failure(e.to_string())
    }
}

impl From<EigError> for AppError {
    fn from(e: EigError) -> Self {
        match e {
            EigError::Argument(_) | EigError::KindMismatch { .. } => AppError::usage(e.to_string()),
            EigError::Evaluation(_) => AppError::failure(e.to_string()),
        }
    }
}

impl From<SolverError> for AppError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Argument(_)
            | SolverError::Unstable { .. }
            | SolverError::NotStrictlyPassive { .. }
            | SolverError::Format(_) => AppError::usage(e.to_string()),
            SolverError::Pole { .. } => AppError::failure(e.to_string()),
            SolverError::Eig(inner) => inner.into(),
        }
    }
}

impl From<CounterexError> for AppError {
    fn from(e: CounterexError) -> Self {
        match e {
            CounterexError::Domain { .. }
            | CounterexError::Order { .. }
            | CounterexError::Argument(_) => AppError::usage(e.to_string()),
            _ => AppError::failure(e.to_string()),
        }
    }
}

impl From<MaxFunError> for AppError {
    fn from(e: MaxFunError) -> Self {
        match e {
            MaxFunError::Domain { .. }
            | MaxFunError::Argument(_)
            | MaxFunError::Capability { .. } => AppError::usage(e.to_string()),
        }
    }
}
