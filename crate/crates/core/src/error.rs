use thiserror::Error;

/// Errors raised by graph construction, spectral computations and reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed edge-list line {line}: {content:?}")]
    MalformedLine { line: usize, content: String },

    #[error("self-loop at vertex {vertex} (line {line})")]
    SelfLoop { vertex: usize, line: usize },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("unknown graph name {0:?}")]
    UnknownName(String),

    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },

    #[error("{m} edges cannot connect {n} vertices")]
    TooFewEdges { n: usize, m: usize },

    #[error("{m} edges exceed the {max} available vertex pairs")]
    TooManyEdges { m: usize, max: usize },

    #[error("no connected sample after {0} draws")]
    RetriesExhausted(usize),

    #[error("eigensolver {solver} did not converge after {iterations} iterations")]
    ConvergenceFailure {
        solver: &'static str,
        iterations: usize,
    },

    #[error("spectrum check failed: {0}")]
    SpectrumCheck(String),

    #[error("unknown eigensolver {0:?}")]
    UnknownSolver(String),

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("cutoff must be non-negative, got {0}")]
    InvalidCutoff(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("product is numerically zero (squared norm {0:e})")]
    EmptyProduct(f64),

    #[error("eigenvalue must be positive (lambda = {lambda}, mu = {mu})")]
    NonPositiveEigenvalue { lambda: f64, mu: f64 },

    #[error("pair ({i}, {j}) involves the constant eigenvector")]
    ConstantEigenvectorExcluded { i: usize, j: usize },

    #[error("no lattice points with |m|^2 = {0}")]
    EmptyFrequencySet(u64),

    #[error("not an eigenfunction: support mixes |m|^2 = {expected} with {found}")]
    NotAnEigenfunction { expected: i64, found: i64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Variant name, stable across releases; printed by the command line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedLine { .. } => "MalformedLine",
            Error::SelfLoop { .. } => "SelfLoop",
            Error::Disconnected { .. } => "Disconnected",
            Error::EmptyGraph => "EmptyGraph",
            Error::UnknownName(..) => "UnknownName",
            Error::BadParams { .. } => "BadParams",
            Error::TooFewEdges { .. } => "TooFewEdges",
            Error::TooManyEdges { .. } => "TooManyEdges",
            Error::RetriesExhausted(..) => "RetriesExhausted",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::SpectrumCheck(..) => "SpectrumCheck",
            Error::UnknownSolver(..) => "UnknownSolver",
            Error::NegativeTime(..) => "NegativeTime",
            Error::NonPositiveTime(..) => "NonPositiveTime",
            Error::InvalidCutoff(..) => "InvalidCutoff",
            Error::InvalidArgument(..) => "InvalidArgument",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::EmptyProduct(..) => "EmptyProduct",
            Error::NonPositiveEigenvalue { .. } => "NonPositiveEigenvalue",
            Error::ConstantEigenvectorExcluded { .. } => "ConstantEigenvectorExcluded",
            Error::EmptyFrequencySet(..) => "EmptyFrequencySet",
            Error::NotAnEigenfunction { .. } => "NotAnEigenfunction",
            Error::Io(..) => "Io",
            Error::Json(..) => "Json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
