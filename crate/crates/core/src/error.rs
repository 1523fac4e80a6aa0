use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("motif has no edges")]
    EmptyMotif,
    #[error("vertex {0} is not incident to any edge")]
    IsolatedVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("motif has {k} vertices, at most {max} are supported")]
    MotifTooLarge { k: usize, max: usize },
    #[error("r = {r} exceeds n = {n}")]
    Range { r: usize, n: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("copy index {index} out of range (total {total})")]
    IndexOutOfRange { index: u128, total: u128 },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),
    #[error("requested {m} copies but only {total} exist")]
    TooManyCopies { m: u128, total: u128 },
    #[error("process exhausted after {0} copies")]
    Exhausted(u128),
    #[error("copy count exceeds 128-bit index range")]
    ModelTooLarge,
    #[error("subgraph has {k} vertices, cap is {cap}")]
    SubgraphTooLarge { k: usize, cap: usize },
    #[error("perfect matching requested on odd n = {0}")]
    OddN(usize),
    #[error("subject has {edges} edges, cap is {cap}")]
    SubjectTooLarge { edges: usize, cap: usize },
    #[error("subject graph is not connected")]
    Disconnected,
    #[error("motif is not a path")]
    NotAPath,
    #[error("empirical curve not monotone: p_hat({lo_p}) = {lo_hat} vs p_hat({hi_p}) = {hi_hat}")]
    NonMonotoneSignal {
        lo_p: f64,
        lo_hat: f64,
        hi_p: f64,
        hi_hat: f64,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
