//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("bound mismatch: {0}")]
    BoundMismatch(String),
    #[error("not idempotent")]
    NotIdempotent,
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("not projective: {0}")]
    NotProjective(String),
    #[error("not finitely generated: {0}")]
    NotFinitelyGenerated(String),
    #[error("not azumaya: {0}")]
    NotAzumaya(String),
    #[error("extension mismatch: {0}")]
    ExtensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
