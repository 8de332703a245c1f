use thiserror::Error;

/// Errors shared by every module. Operations that check mathematical
/// preconditions return these instead of panicking; panics are reserved for
/// internal convention violations (a bug in this crate, not in the caller).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars belong to different base rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not a unit in its base ring")]
    NonUnit,
    #[error("matrix is not invertible over its base ring")]
    NotInvertible,
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("operation does not support systems with a declared tail")]
    TailNotSupported,
    #[error("window exceeds the available stages of the system")]
    WindowTooLarge,
    #[error("structure maps do not satisfy the Hopf axioms: {0}")]
    NotAHopfAlgebra(String),
    #[error("enumeration requires a finite base ring (integers mod n)")]
    InfiniteRing,
    #[error("pairing fails the Hopf pairing diagrams: {0}")]
    NotAHopfPairing(String),
    #[error("constructed product is not associative or not unital: {0}")]
    AssociativityFailure(String),
    #[error("map does not verify as an isomorphism: {0}")]
    IsoVerificationFailure(String),
    #[error("window has fewer stages than the construction needs")]
    InsufficientHeadroom,
    #[error("left and right associations of the three-fold product disagree")]
    BracketingMismatch,
    #[error("operation requires the base ring to be a field")]
    NotAField,
    #[error("parameter must be a prime number")]
    NotPrime,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
