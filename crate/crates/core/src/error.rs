use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(usize),
    #[error("{what}: n = {n} exceeds the limit {limit}")]
    TooLarge { what: &'static str, n: usize, limit: usize },
    #[error("sequence is not non-increasing at index {0}")]
    NotSorted(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
}
