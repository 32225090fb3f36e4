use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("graph order {0} is too small; at least 3 vertices are required")]
    InvalidOrder(usize),
    #[error("edge endpoint {vertex} is outside 1..={n}")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("(vertex {vertex}, position {position}) has no qubit for n = {n}")]
    IndexOutOfRange {
        vertex: usize,
        position: usize,
        n: usize,
    },
    #[error("expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("penalty weight must be positive")]
    NonPositiveWeight,
    #[error("variable x[{vertex},{position}] does not map to a qubit for n = {n}")]
    UnmappedVariable {
        vertex: usize,
        position: usize,
        n: usize,
    },
    #[error("no weight given for edge ({0}, {1})")]
    WeightMissing(usize, usize),
    #[error("{actual} qubits exceeds the configured cap of {cap}")]
    TooManyQubits { actual: usize, cap: usize },
    #[error("model has no qubits")]
    EmptyModel,
    #[error("expected {expected} parameters per vector, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("circuit still contains symbolic parameter {0}")]
    UnboundParameter(String),
    #[error("dimension mismatch: state has {state} qubits, observable has {observable}")]
    DimensionMismatch { state: usize, observable: usize },
    #[error("invalid noise model: {0}")]
    InvalidNoise(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for failures caused by exceeding a resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::TooManyQubits { .. })
    }
}
