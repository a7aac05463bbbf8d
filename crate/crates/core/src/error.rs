use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("split neighbourhoods do not cover N({0}) exactly")]
    NeighborhoodMismatch(usize),
    #[error("graph has {n} vertices, need at least {min}")]
    TooFewVertices { n: usize, min: usize },
    #[error("{what} exceeds the cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("k = {k} exceeds block size {size}")]
    BlockTooSmall { k: usize, size: usize },
    #[error("k-connector test undecided: C({size}, {k}) subsets exceeds the enumeration cap")]
    Undecided { size: usize, k: usize },
    #[error("no big component between blocks {0} and {1}")]
    NoBigComponent(usize, usize),
    #[error("more than one big component between blocks {0} and {1}")]
    MultipleBigComponents(usize, usize),
    #[error("removal cap exceeded in block {0}")]
    CapOverflow(usize),
    #[error("invalid partition spec: {0}")]
    InvalidSpec(String),
    #[error("forest of block {0} contains a cycle")]
    NotAForest(usize),
    #[error("zero direction vector on edge {0}")]
    ZeroDirection(usize),
    #[error("retry budget of {0} restarts exhausted")]
    RetryBudgetExhausted(usize),
    #[error("matrix is too large for this routine: {0}")]
    MatrixTooLarge(String),
}
