use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),
    #[error("edge {edge} has {found} distinct vertices, expected {expected}")]
    WrongEdgeCardinality { edge: usize, expected: usize, found: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("declared vertex count {declared} does not match {found} used vertex ids")]
    VertexCountMismatch { declared: usize, found: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("hypergraph is irreducible")]
    Irreducible,
    #[error("invalid identification: {0}")]
    InvalidIdentification(String),
    #[error("hypergraph is not connected")]
    NotConnected,
    #[error("hypergraph is not a hypertree")]
    NotHypertree,
    #[error("malformed weight matrix: {0}")]
    MalformedMatrix(String),
    #[error("value out of domain: {0}")]
    OutOfDomain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("no certificate: {0}")]
    NoCertificate(String),
    #[error("glue error: {0}")]
    Glue(String),
    #[error("power iteration did not converge after {iterations} steps, bracket [{lower}, {upper}]")]
    NotConverged { lower: f64, upper: f64, iterations: usize },
    #[error("inconclusive: bracket [{lower}, {upper}] straddles threshold {threshold}")]
    Inconclusive { lower: f64, upper: f64, threshold: f64 },
    #[error("instance exceeds limits: {0}")]
    LimitExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
