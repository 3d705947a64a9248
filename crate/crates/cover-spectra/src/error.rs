//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("division by zero")]
    DivideByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("the zero polynomial has no multiplicities")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the supported bound {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("interval endpoint is a root")]
    EndpointIsRoot,
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("path endpoints must be distinct")]
    SameVertex,
    #[error("graph too large for {op}: {size} > cap {cap}")]
    GraphTooLarge { op: &'static str, size: usize, cap: usize },
    #[error("quotient cover too large: {size} vertices > cap {cap}")]
    CoverTooLarge { size: usize, cap: usize },
    #[error("cover ball too large: more than {cap} vertices")]
    BallTooLarge { cap: usize },
    #[error("frontier too large for subset search: {size} > cap {cap}")]
    FrontierTooLarge { size: usize, cap: usize },
    #[error("missing weight for cycle [{0}]")]
    MissingCycleWeight(String),
    #[error("internal consistency failure: characteristic polynomial has a nonvanishing imaginary part")]
    NonVanishingImaginaryPart,
    #[error("finite continued-fraction value unavailable for algebraic theta")]
    FiniteValueUnavailable,
    #[error("sample point is a pole")]
    PoleAtSample,
    #[error("edge/vertex sequence is not a path of the graph")]
    NotAPath,
    #[error("graph is not theta-critical")]
    NotCritical,
    #[error("graph is a tree; it has no cycle")]
    IsATree,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("exhausted search without the guaranteed witness (implementation bug): {0}")]
    ExhaustedWithoutWitness(String),
    #[error("a theta-Aomoto subset exists; no negative certificate is possible")]
    AomotoSubsetExists,
    #[error("vertex set is not inside a single theta-critical component")]
    NotInsideCriticalComponent,
    #[error("graph is not factor-critical")]
    NotFactorCritical,
    #[error("vertices are not adjacent")]
    NotAdjacent,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("instance generation exceeded its rejection budget")]
    RejectionBudgetExceeded,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code for the CLI: 2 = input error, 4 = cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GraphTooLarge { .. }
            | Error::CoverTooLarge { .. }
            | Error::BallTooLarge { .. }
            | Error::FrontierTooLarge { .. }
            | Error::DegreeTooLarge { .. } => 4,
            _ => 2,
        }
    }
}
