use alloc::string::String;

/// Failures while building or querying a [`Graph`](crate::Graph).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("operation is undefined on the graph with no vertices")]
    Degenerate,
    #[error("order {n} exceeds the supported limit of {max}")]
    Capacity { n: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("eigendecomposition of an empty matrix")]
    Degenerate,
    #[error("matrix data has {len} entries, expected {n}x{n}")]
    Shape { n: usize, len: usize },
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },
}

/// Argument outside the domain of a bound framework function.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DomainError {
    #[error("argument {0} is negative")]
    NegativeArgument(f64),
    #[error("framework needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}
