use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge:?} has {got} distinct vertices, expected {expected}")]
    NonUniformEdge {
        edge: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("vertex {vertex} out of range, n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: Vec<usize> },
    #[error("{n} vertices exceed the bitset cap {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("edge index {index} out of range, {len} edges")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("t = {t} invalid for uniformity r = {r}")]
    BadT { t: usize, r: usize },
    #[error("invalid parameters: {0}")]
    BadArgs(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("hypergraph is not k-free, witness edge indices {witness:?}")]
    NotKFree { witness: Vec<usize> },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("case analysis exhausted: {0}")]
    CaseAnalysisExhausted(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("t-graph is not supporting: misses shadow member {missing:?}")]
    NotSupporting { missing: Vec<usize> },
    #[error("t-tight component has {size} edges, at most {limit} allowed")]
    ComponentTooLarge { size: usize, limit: usize },
    #[error("component {component:?} of size >= 2 has no 2-configuration")]
    NoTwoConfiguration { component: Vec<usize> },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
