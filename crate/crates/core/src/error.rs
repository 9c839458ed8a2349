use thiserror::Error;

/// Errors produced by graph construction and the algorithm entry points.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) is a self-loop")]
    SelfLoop { u: usize, v: usize },

    #[error("edge ({u}, {v}) has invalid weight {w} (must be positive and finite)")]
    BadWeight { u: usize, v: usize, w: f64 },

    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("vertex set is not valid for a graph on {n} vertices")]
    BadVertexSet { n: usize },

    #[error("graphs have different vertex counts ({left} vs {right})")]
    VertexCountMismatch { left: usize, right: usize },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("S must be a subset of B")]
    NotASubset,

    #[error("vertex {v} has zero degree in the degree context")]
    ZeroDegree { v: usize },

    #[error(
        "subset enumeration supports at most {max} vertices, got {got}; \
         use the approximate partitioning path for larger graphs"
    )]
    TooLargeForEnumeration { max: usize, got: usize },

    #[error("graph must be unweighted (all edge weights 1), found weight {w}")]
    NotUnweighted { w: f64 },

    #[error("edge weights must be integers >= 1, found {w}")]
    NotIntegral { w: f64 },

    #[error("edge weight {w} outside (0, 1]")]
    WeightOutOfRange { w: f64 },

    #[error("epsilon {eps} outside ({lo}, {hi})")]
    EpsilonOutOfRange { eps: f64, lo: f64, hi: f64 },

    #[error("parameter {name} = {value} outside {range}")]
    BadParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("malformed path: {0}")]
    MalformedPath(String),

    #[error("vertex {v} has no cluster assignment")]
    UnmappedVertex { v: usize },

    #[error("no pullback candidate for contracted edge ({a}, {b})")]
    NoPullbackCandidate { a: usize, b: usize },

    #[error("sparsifier contains edge ({u}, {v}) absent from the original graph")]
    SupportViolation { u: usize, v: usize },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
