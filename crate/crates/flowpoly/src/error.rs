use thiserror::Error;

/// Errors surfaced by the exact kernels and graph operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gamma is only defined here for positive arguments in (1/2)Z, got {0}")]
    GammaDomain(String),

    #[error("value is not rational: residual pi exponent is {0}")]
    PiExponent(i64),

    #[error("netflow has length {got}, expected {expected}")]
    NetflowLength { got: usize, expected: usize },

    #[error("netflow entries must sum to zero (sum = {0})")]
    NetflowSum(i64),

    #[error("graph must have unique source 0 and unique sink n+1")]
    SourceSink,

    #[error("edge {tail_edge} must feed edge {head_edge} through a shared middle vertex")]
    BadReduction { tail_edge: usize, head_edge: usize },

    #[error("flow precondition violated: {0}")]
    FlowPrecondition(String),

    #[error("flow polytope is empty for the given netflow")]
    EmptyPolytope,

    #[error("interpolated leading coefficient times d! is not an integer: {0}")]
    NonIntegralVolume(String),

    #[error("series window overflow: exponent {exponent} exceeds +/-{window}")]
    WindowOverflow { exponent: i64, window: i64 },

    #[error("clique is not maximal: edge {0} appears in no route prefix")]
    NonMaximalClique(usize),

    #[error("no maximal clique maps to the given flow")]
    NoCliquePreimage,

    #[error("route subgraph is not a spanning tree")]
    NotSpanningTree,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
