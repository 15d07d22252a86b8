use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A matrix does not satisfy the absorbing-chain invariants.
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("degenerate chain: {0}")]
    DegenerateChain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("tour did not absorb within {cap} steps")]
    RunawayTour { cap: u64 },
    #[error("{0} did not converge")]
    Convergence(String),
    #[error("iterate left the simplex: |sum - 1| = {0:e}")]
    SimplexDrift(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Convergence(_)
                | Error::SimplexDrift(_)
                | Error::RunawayTour { .. }
                | Error::DegenerateChain(_)
        )
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
