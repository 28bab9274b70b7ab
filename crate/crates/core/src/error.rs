//! One error type for the whole crate.
//!
//! Checks that can *fail mathematically* (a bound that does not hold, an
//! equality case that does not match) are not errors; they are reported in
//! the result structs of the individual checks.  `Error` is reserved for
//! inputs that violate a precondition.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set must be nonempty")]
    EmptyGroundSet,

    #[error("vertex {vertex} out of range for {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },

    #[error("{requested} vertices exceed the cap of {cap} (raise the cap to allow this)")]
    VertexCapExceeded { requested: u128, cap: usize },

    #[error("pair relation is not symmetric at ({u}, {v})")]
    AsymmetricRelation { u: usize, v: usize },

    #[error("pair relation is not reflexive at {v}: every singleton must be admissible")]
    IrreflexiveRelation { v: usize },

    #[error("edge ({u}, {v}) is a loop")]
    LoopEdge { u: usize, v: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("edge ({u}, {v}) is not in canonical order (expect u < v)")]
    EdgeNotCanonical { u: usize, v: usize },

    #[error("expected {expected} labels, got {got}")]
    LabelCountMismatch { expected: usize, got: usize },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("set is not independent")]
    NotIndependent,

    #[error("images of length {got} do not form a permutation of degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("images are not a bijection: value {value} repeats or is out of range")]
    NotABijection { value: usize },

    #[error("generator set must be nonempty")]
    EmptyGeneratorSet,

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("block seed points must be distinct")]
    IdenticalPoints,

    #[error("action is not transitive")]
    NotTransitive,

    #[error("action degree {degree} is too small for a primitivity question")]
    DegreeTooSmall { degree: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{q} is not prime")]
    NotPrime { q: u32 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("rows do not span a {k}-dimensional subspace (rank {rank})")]
    BadBasis { k: u32, rank: u32 },

    #[error("independence number {given} does not match the solver's value {computed}")]
    AlphaMismatch { given: usize, computed: usize },

    #[error("set is not imprimitive: {0}")]
    NotImprimitive(&'static str),

    #[error("parts are not a cross family: edge between part {i} and part {j}")]
    NotACrossFamily { i: usize, j: usize },

    #[error("family total {total} does not meet the optimum {bound}")]
    NotOptimal { total: usize, bound: usize },

    #[error("generators do not certify vertex-transitivity: {0}")]
    NotVertexTransitive(&'static str),

    #[error("{vertices} vertices exceed the search cap of {cap} for this operation")]
    SearchCapExceeded { vertices: usize, cap: usize },

    #[error("malformed graph JSON: {0}")]
    MalformedJson(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::MalformedJson(e.to_string())
    }
}
