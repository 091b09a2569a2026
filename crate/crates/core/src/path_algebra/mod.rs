//! Path algebras of quivers, relation ideals and balanced tensors.

mod elem;
mod parse;
mod ideal;
mod quiver;
mod tensor;

pub use elem::{AlgElem, PathWord, RelationLabel, RelationSet};
pub use parse::{parse_elem, ParseElemError};
pub use ideal::{ideal_span, reduces_to_zero, CertTerm, Certificate, IdealFamily, IdealOracle, PathIndex};
pub use quiver::{Quiver, QuiverEdge};
pub use tensor::{BalancedTensor, Balancing, Tensor2, Tensor3};

/// Σ over all vertex idempotents.
pub fn unit(q: &Quiver) -> AlgElem {
    (0..q.vertex_count()).map(|v| (PathWord::vertex(v), crate::linalg::Rational::one())).collect()
}

#[cfg(test)]
mod tests;
