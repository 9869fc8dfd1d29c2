//! Error type shared by every module of the crate.

/// Crate-wide error type.
///
/// Identity checks never return booleans: a violated identity carries the
/// offending residual (rendered exactly) so failures can be diagnosed, and
/// all other variants describe the contract that was broken.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The Wronskian of an empty sequence of polynomials is undefined.
    #[error("wronskian requires a non-empty sequence of polynomials")]
    EmptyWronskian,

    /// Real-root counting is undefined for the zero polynomial.
    #[error("cannot count real roots of the zero polynomial")]
    ZeroPolynomial,

    /// Division by the zero rational function or construction with a zero
    /// denominator.
    #[error("division by the zero rational function")]
    DivisionByZero,

    /// Input sequence is not a partition (an increase or a negative entry).
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A set of non-negative integers that is not the gap set of any
    /// partition.
    #[error("infeasible gap set: {0}")]
    InfeasibleGapset(String),

    /// A precondition on an argument was violated (wrong range, duplicate
    /// degrees, and the like).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested degree lies in the exceptional set K_λ, where the
    /// family has no member (the π-prefactor vanishes).
    #[error("degree {n} is exceptional for this partition; no family member exists")]
    GapDegree { n: usize },

    /// The partition is not even, so the Krein–Adler admissibility test
    /// fails and the weight η_λ^{-2}e^{-x²} is singular.
    #[error("partition {0} is not even; orthogonality requires an even partition")]
    NotEven(String),

    /// An identity that must hold exactly produced a non-zero residual.
    /// This signals an internal inconsistency, never a user error.
    #[error("identity `{identity}` violated; residual = {residual}")]
    IdentityViolation { identity: String, residual: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for the verification operations: build an
    /// [`Error::IdentityViolation`] from an identity name and a displayable
    /// residual.
    pub fn identity(identity: impl Into<String>, residual: impl std::fmt::Display) -> Self {
        Error::IdentityViolation {
            identity: identity.into(),
            residual: residual.to_string(),
        }
    }
}
