use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("rook constructions assume n >= 3, got n = {0}")]
    RookSizeTooSmall(usize),

    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("loop edge ({0}, {0}) is not allowed")]
    LoopEdge(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("sequence is not a permutation: {0}")]
    NotAPermutation(String),

    #[error("permutation is not an automorphism of the given graph")]
    NotAnAutomorphism,

    #[error("grid coordinate ({i}, {j}) invalid for n = {n}")]
    BadGridCoordinate { i: usize, j: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows} x {cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cyclic order must be positive, got {0}")]
    NonPositiveOrder(String),

    #[error("group has free rank {0} > 0, so its order is infinite")]
    InfiniteGroup(usize),

    #[error("element has infinite order in this cokernel")]
    InfiniteOrder,

    #[error("operation needs a decomposition computed with transforms")]
    TransformsRequired,

    #[error("no published firing sequence for ({kind}, {id})")]
    NoCatalogEntry { kind: String, id: String },
}

pub type Result<T> = std::result::Result<T, Error>;
