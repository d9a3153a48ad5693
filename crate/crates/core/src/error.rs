use alloc::string::String;

/// Errors raised by the algebra routines.
///
/// Mathematical negatives that carry a witness (a sequence that fails
/// verification, an object outside a subcategory) are reported through
/// dedicated result types instead; these variants are for contract
/// violations and for computations that cannot proceed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("representations live over different quivers or primes")]
    QuiverMismatch,

    #[error("quiver {0} has an oriented cycle")]
    Cyclic(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("morphism does not commute along arrow {0}")]
    NotCommuting(String),

    #[error("prime {p} too small: need p > {needed} (increase prime)")]
    PrimeTooSmall { p: u32, needed: usize },

    #[error("{0} has a projective direct summand")]
    ProjectiveSummand(String),

    #[error("{0} has an injective direct summand")]
    InjectiveSummand(String),

    #[error("projective: no almost split sequence ends here")]
    Projective,

    #[error("injective: no almost split sequence starts here")]
    Injective,

    #[error("undetermined: {0}")]
    Undetermined(String),

    #[error("not representation-finite within budget of {0} objects")]
    NotRepresentationFinite(usize),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
