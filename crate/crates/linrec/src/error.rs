use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    BadExtensionDegree,

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("division by zero in a field")]
    ZeroInverse,

    #[error("operands belong to different fields")]
    MixedFields,

    #[error("multiplicative order of zero is undefined")]
    ZeroOrder,

    #[error("division by the zero polynomial")]
    ZeroPolyDivision,

    #[error("the zero polynomial is not accepted here")]
    ZeroPolynomial,

    #[error("a constant polynomial is not accepted here")]
    ConstantPolynomial,

    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),

    #[error("subspace is not invariant under the matrix")]
    NotInvariant,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("factorization contains the factor x; split off the nilpotent part first")]
    SingularFactor,

    #[error("internal invariant violated: {0}")]
    TheoryViolation(String),

    #[error("no repeated state within {0} steps; raise the step limit")]
    StepLimit(usize),

    #[error("{0}")]
    Parse(String),

    #[error("positive integer required")]
    NonPositive,
}

impl Error {
    /// Parse error annotated with a 1-based line number.
    pub fn parse_at(line: usize, msg: impl std::fmt::Display) -> Self {
        Error::Parse(format!("line {line}: {msg}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
