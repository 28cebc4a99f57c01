use thiserror::Error;

/// Errors raised by the analytic formulas, the Fock-space oracle and the
/// scan front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the range an operation supports.
    #[error("domain error: {0}")]
    Domain(String),

    /// A log-domain quantity is too large to be represented as an `f64`.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The requested state is the zero vector and cannot be normalized.
    #[error("degenerate state: {0}")]
    Degenerate(String),

    /// The Fock-space cutoff needed to hold a state exceeds the policy maximum.
    #[error("truncation insufficient: dimension {dim} reaches the limit {max_dim} (tail mass {tail_mass:e})")]
    Truncation {
        dim: usize,
        max_dim: usize,
        tail_mass: f64,
    },

    /// A quantity that must be nonnegative came out negative beyond tolerance.
    #[error("numerical consistency: {0}")]
    NumericalConsistency(String),

    /// A family/sign pairing that has no closed form.
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::Degenerate(_))
    }

    /// Process exit status of the command-line tool: 2 for bad input, 3 for
    /// numerical and truncation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_) | Error::Domain(_) | Error::Unsupported(_) => 2,
            Error::Overflow(_)
            | Error::Degenerate(_)
            | Error::Truncation { .. }
            | Error::NumericalConsistency(_) => 3,
        }
    }
}
