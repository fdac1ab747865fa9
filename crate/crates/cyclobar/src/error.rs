use cyclobar_core::bar::BarError;
use cyclobar_core::ss::SsError;
use cyclobar_core::tc::TcError;
use cyclobar_core::witt::WittError;

/// Failure of a command, carrying its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invariant failed: {0}")]
    Invariant(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 usage (and I/O), 2 budget, 3 invariant failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Io(_) | Self::Cache(_) => 1,
            Self::Budget(_) => 2,
            Self::Invariant(_) => 3,
        }
    }
}

impl From<BarError> for CliError {
    fn from(e: BarError) -> Self {
        match e {
            BarError::BudgetExceeded { .. } | BarError::WeightOverCap { .. } => Self::Budget(e.to_string()),
            BarError::NotAComplex => Self::Invariant(e.to_string()),
        }
    }
}

impl From<WittError> for CliError {
    fn from(e: WittError) -> Self {
        match e {
            WittError::NonIntegralCoefficient { .. } => Self::Invariant(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<TcError> for CliError {
    fn from(e: TcError) -> Self {
        match e {
            TcError::DecompositionMismatch | TcError::InvariantViolation(_) | TcError::Linalg(_) => {
                Self::Invariant(e.to_string())
            }
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<SsError> for CliError {
    fn from(e: SsError) -> Self {
        Self::Usage(e.to_string())
    }
}
