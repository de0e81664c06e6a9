use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph on {n} vertices exceeds the limit of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop requested at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("family spec: {0}")]
    FamilySpec(String),

    /// Input exceeds the size an exact routine is allowed to handle.
    #[error("{what}: size {size} exceeds budget {max}")]
    OverBudget { what: &'static str, size: usize, max: usize },

    /// A bounded search ran out of steps before reaching a verdict.
    #[error("step budget exhausted in {0}")]
    BudgetExhausted(&'static str),

    #[error("pattern on {pattern} vertices cannot embed in host on {host} vertices")]
    PatternLargerThanHost { pattern: usize, host: usize },

    #[error("decomposition family needs chromatic number at least 3, got {0}")]
    ChromaticTooSmall(usize),

    #[error("power iteration did not reach residual {tol:e} after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64, tol: f64 },

    #[error("graph is not connected")]
    Disconnected,

    #[error("partition is inconsistent with the graph: {0}")]
    BadPartition(String),
}
