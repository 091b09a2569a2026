//! Exact computer algebra for Hopf algebroids attached to finite digraphs:
//! the digraph differential calculus, presented algebras on the double
//! quiver, axiom certification by bounded-degree ideal membership, isotopy
//! quotients and the fundamental groupoid.

pub mod calculus;
pub mod digraph;
pub mod groupoid;
pub mod hopf;
pub mod isotopy;
pub mod linalg;
pub mod path_algebra;
pub mod presentations;
pub mod report;
