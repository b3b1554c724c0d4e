use crate::cycles::CycleWitness;
use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("vertex sets overlap at vertex {0}")]
    Overlap(Vertex),

    #[error("vertex {0} is not covered by the bipartition")]
    Uncovered(Vertex),

    #[error("({0}, {1}) is already an edge")]
    AlreadyEdge(Vertex, Vertex),

    #[error("{what}: size {size} exceeds the exhaustive budget {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("malformed graph6 at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid parameters: {0}")]
    Parameters(String),

    #[error("graph contains a forbidden cycle {0:?}")]
    ContainsCycle(CycleWitness),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
