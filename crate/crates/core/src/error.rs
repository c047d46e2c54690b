use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("{what}: size {size} exceeds the exact limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid vertex order: {0}")]
    InvalidOrder(String),

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("group {0} of the coarsening map is empty")]
    EmptyGroup(usize),

    #[error("kernel is not monotone")]
    NotMonotone,

    #[error("incompatible grid: {0}")]
    IncompatibleGrid(String),

    #[error("mismatched partitions: {0}")]
    MismatchedPartitions(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
