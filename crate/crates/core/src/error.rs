use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymError {
    /// A caller-supplied argument is outside the domain of the operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The state has no nonzero amplitude (or all moments fell below the rank
    /// tolerance).
    #[error("zero state: every amplitude is below tolerance")]
    ZeroState,

    #[error("mismatched party numbers: {left} vs {right}")]
    PartyMismatch { left: usize, right: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Dense 2^N objects were requested beyond the configured cap.
    #[error("N = {n} exceeds the dense-vector cap of {cap}")]
    ExceedsCap { n: usize, cap: usize },

    /// The numerical solver could not certify any decomposition.
    #[error("ill-conditioned: {detail} (condition number {condition:.3e})")]
    IllConditioned { condition: f64, detail: String },

    /// The symmetric-space kernel of the reduced density matrix is trivial at
    /// the requested interaction length.
    #[error(
        "no kernel at interaction length {n}: minimal interaction length is n*={}",
        n_star.map(|v| v.to_string()).unwrap_or_else(|| "none".into())
    )]
    NoKernel { n: usize, n_star: Option<usize> },

    /// A coupling inequality required by a named Hamiltonian does not hold.
    #[error("coupling condition violated: {0}")]
    CouplingViolation(String),
}

pub type SymResult<T> = Result<T, SymError>;
