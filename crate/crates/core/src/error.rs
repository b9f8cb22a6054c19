use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({0}, {0}) is a self-loop")]
    InvalidEdge(usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("invalid generator recipe: {0}")]
    RecipeInvalid(&'static str),
    #[error("matrix shape error: {0}")]
    MatrixShape(&'static str),
    #[error("index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },
    #[error("order {order} exceeds the configured limit {limit}")]
    SizeLimit { order: usize, limit: usize },
}
