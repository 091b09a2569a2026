//! Exact linear algebra over ℚ and ℤ.

mod func;
mod matrix;
mod rational;
mod smith;

pub use func::Func;
pub use matrix::{in_span, rank, rref, EchelonBasis, LinalgError, QMatrix, QVector, SpanDecision};
pub(crate) use matrix::axpy;
pub use rational::{ParseRationalError, Rational};
pub use smith::{smith_dense, smith_normal_form, SmithResult};
