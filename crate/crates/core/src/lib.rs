//! Finite posets, finite categories and heteromorphism bimodules, with
//! exhaustive checkers for Galois connections, universal objects,
//! semi-adjunctions, adjunctions and brain functors, plus concrete model
//! families (powersets, free groups, vector spaces over small prime fields).

pub mod category;
pub mod freegroup;
pub mod het;
pub mod limits;
pub mod linalg;
pub mod poset;
pub mod powerset;

pub use limits::{CapExceeded, Limits};

/// Which side of an adjoint pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}
