use thiserror::Error;

/// Errors raised by the exact-algebra kernel and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entries live in different number fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("generator image {index} is not a root of the minimal polynomial")]
    NotAutomorphism { index: usize },
    #[error("automorphisms do not form a Galois group: {0}")]
    NotGalois(String),
    #[error("group element {0} out of range")]
    BadGroupElement(usize),
    #[error("invalid group table: {0}")]
    BadGroup(String),
    #[error("subgroup is not normal: conjugation by {0} leaves it")]
    NonNormal(usize),
    #[error("morphism endpoints carry no descent datum")]
    MissingDatum,
    #[error("cocycle condition fails at (g, h) = ({g}, {h})")]
    CocycleViolation { g: usize, h: usize },
    #[error("invalid descent datum: {0}")]
    InvalidDatum(String),
    #[error("comparison map f*f_*C -> (+)_g g*C is not invertible")]
    NotCartesian,
    #[error("projection morphism w_A is not invertible")]
    WeakProjectionFails,
    #[error("object is not an Artin object: {0}")]
    NotArtin(String),
    #[error("modules are over different monoids")]
    MonoidMismatch,
    #[error("not a monoid morphism: {0}")]
    BadMonoidMap(String),
    #[error("invalid monoid or module: {0}")]
    BadAlgebra(String),
    #[error("functor is not strong monoidal: {0}")]
    NotStrongMonoidal(String),
    #[error("invalid object or morphism: {0}")]
    BadMorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
