//! Exact combinatorics of intersection systems.
//!
//! The objects here are finite graphs whose independent sets are the
//! "compatible" subsets of some ground set: two elements are joined by an
//! edge exactly when they may not appear together.  The classical examples
//! are built in [`constructions`]: Kneser-type graphs on k-subsets,
//! q-analogues on k-dimensional subspaces, and agreement graphs on
//! permutations.
//!
//! On top of the graphs the crate provides
//!
//! * an exact maximum-independent-set solver ([`solver`]),
//! * permutation-group machinery for orbits, transitivity and block systems
//!   ([`group`]),
//! * searches and checks around imprimitive independent sets
//!   ([`primitivity`]),
//! * optimisation and classification of cross families, i.e. tuples of
//!   vertex sets with no edges between distinct parts ([`cross`]),
//! * a small JSON interchange format ([`json`]),
//! * slow reference implementations used to cross-check the fast paths
//!   ([`reference`]).
//!
//! Everything is exact integer arithmetic; nothing here is randomized except
//! the explicitly seeded sampling helpers.

pub mod constructions;
pub mod cross;
pub mod error;
pub mod graph;
pub mod group;
pub mod json;
pub mod primitivity;
pub mod reference;
pub mod set;
pub mod solver;

mod gf;

pub use error::{Error, Result};
pub use graph::SystemGraph;
pub use set::VertexSet;
