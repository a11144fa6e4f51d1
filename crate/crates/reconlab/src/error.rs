use thiserror::Error;

/// Errors produced by graph construction and the counting/verification
/// operations. Pure index-based queries (`degree`, `has_edge`, ...) panic on
/// contract violations instead; see the per-method docs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a graph needs at least one vertex")]
    EmptyGraph,

    #[error("graph on {n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("edge ({a}, {b}) is out of range for a graph on {n} vertices")]
    EdgeOutOfRange { a: usize, b: usize, n: usize },

    #[error("self-loop ({v}, {v}) is not allowed in a simple graph")]
    SelfLoop { v: usize },

    #[error("vertex {v} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("cannot delete the only vertex of a single-vertex graph")]
    DeleteFromSingleton,

    #[error("permutation has {len} entries, expected {n}")]
    PermutationLengthMismatch { len: usize, n: usize },

    #[error("not a permutation: value {value} is repeated or out of range")]
    NotAPermutation { value: usize },

    #[error("canonical form supports at most {cap} vertices, got {n}")]
    CanonCapExceeded { n: usize, cap: usize },

    #[error("a deck requires at least 2 vertices")]
    DeckUndefined,

    #[error("path length {l} is out of range; expected 1..={max}")]
    PathLengthOutOfRange { l: usize, max: usize },

    #[error("focus vertices must be distinct, got {v} twice")]
    SameFocusVertices { v: usize },

    #[error("path-count oracle supports at most {cap} path vertices, got {vertices}")]
    OracleCapExceeded { vertices: usize, cap: usize },

    #[error("no card-valid matching exists: the graphs are not hypomorphic")]
    NotHypomorphic,

    #[error(
        "exhaustive enumeration supports at most {cap} vertices, got {n}; \
         ingest an externally generated graph list instead"
    )]
    EnumerationCapExceeded { n: usize, cap: usize },

    #[error("no graphs to search")]
    EmptyGraphList,

    #[error("graph lists must share one vertex count: expected {expected}, found {found}")]
    MixedVertexCounts { expected: usize, found: usize },

    #[error("vertex counts differ: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },

    #[error("claim verification requires at least 3 vertices, got {n}")]
    TooFewVerticesForClaims { n: usize },

    #[error("matching is not card-valid: cards at index {index} are not isomorphic")]
    MatchingNotCardValid { index: usize },
}
