use thiserror::Error;

/// Errors produced by graph construction, decomposition and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("fictive edge {0}-{1} is a solid edge or a loop")]
    InvalidFictiveEdge(String, String),
    #[error("root {0} listed twice")]
    DuplicateRoot(String),
    #[error("terminals must be two distinct vertices")]
    InvalidTerminals,
    #[error("layout does not cover the vertex set exactly once")]
    LayoutMismatch,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("graph is not two-terminal series-parallel with respect to the given terminals")]
    NotSeriesParallel,
    #[error("block {{{}}} is not series-parallel; treewidth exceeds 2", .block.join(","))]
    NotTreewidth2 { block: Vec<String> },
    #[error("children of a composition do not share the required terminals")]
    TerminalMismatch,
    #[error("vertex {0} is not a terminal of this table")]
    NotATerminal(usize),
    #[error("malformed SP-tree: {0}")]
    MalformedTree(&'static str),
    #[error("reconstructed witness has cost {actual}, table value is {expected}")]
    WitnessCostMismatch { expected: u32, actual: u32 },
    #[error("instance has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("some solid component contains no root; no connected layout exists")]
    NoConnectedLayout,
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
