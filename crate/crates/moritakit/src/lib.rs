//! Exact-arithmetic computation with small K-linear categories.
//!
//! The crate decides Morita equivalence of finitely presented K-linear
//! categories, builds the classical envelopes (additive hull, idempotent
//! completion, lazy saturation), certifies Azumaya algebras and does
//! Brauer-class arithmetic, and implements the Galois corestriction functor
//! for finite Galois extensions L/K. All arithmetic is exact: the ground
//! field K is Q, GF(p^n), or an explicitly presented quadratic extension
//! of Q.
//!
//! Organization:
//! - [`scalar`]: ground rings and their elements.
//! - [`linalg`]: exact dense linear algebra (rref, rank, kernel, solve).
//! - [`category`] / [`functor`]: K-categories, K-functors, natural
//!   transformations, and the basic constructors (free, tensor, opposite,
//!   base change).
//! - [`envelopes`]: additive hull, Karoubi completion, and the lazy
//!   saturation view with its on-demand hom calculus.
//! - [`morita`]: the Morita-equivalence decision procedure, mapping
//!   cylinders and cylinder objects, saturation witnesses, the homotopy
//!   hom calculus, and bimodule/functor translation.
//! - [`azumaya`]: sandwich-map certification, Brauer multiplication and
//!   inverse, and Morita-triviality witnesses.
//! - [`galois_ext`] / [`galois`]: explicit Galois extensions, skew-linear
//!   modules, fixed points, and the corestriction of modules, algebras,
//!   bimodules and categories.
//! - [`io`]: the JSON file formats consumed and produced by the CLI.
//! - [`acceptance`]: the property suite behind `moritakit acceptance`.

pub mod acceptance;
pub mod azumaya;
pub mod category;
pub mod envelopes;
pub mod error;
pub mod functor;
pub mod galois;
pub mod galois_ext;
pub mod io;
pub mod linalg;
pub mod morita;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Ring, Scalar};
