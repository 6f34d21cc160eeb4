//! Exact Galois descent for linear tensor categories.

pub mod descent;
pub mod error;
pub mod galois;
pub mod group;
pub mod io;
pub mod linalg;
pub mod matcat;
pub mod monoid;
pub mod numfield;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod selftest;
pub mod settings;
pub mod tannaka;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use numfield::{FieldElement, NumberField};
pub use scalar::{Field, Rational};

/// Matrices over the rationals.
pub type QMatrix = Matrix<Rational>;
/// Matrices over a number field (or the rationals).
pub type Mat = Matrix<FieldElement>;
