use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("no zero-sum labeling exists for n = {n}: n(n-1)/2 = {edges} is odd")]
    InfeasibleZeroSum { n: usize, edges: usize },

    #[error("cannot build a {kind} on {n} vertices: {reason}")]
    InfeasibleKind { kind: String, n: usize, reason: String },

    #[error("dimension mismatch: {what} has {found} vertices, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("vertex {0} appears more than once in the prefix")]
    DuplicateInPrefix(usize),

    #[error("vertex {0} is already placed")]
    AlreadyPlaced(usize),

    #[error("every vertex is already placed")]
    PrefixComplete,

    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("epsilon {0} is out of range")]
    EpsilonOutOfRange(String),

    #[error("labeling is not zero-sum (total = {0})")]
    NotZeroSum(i64),

    #[error("u and v must be distinct (both are {0})")]
    SameVertex(usize),

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("bad value {0}: expected -1 or +1")]
    BadValue(i64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no balanced vertex found (internal consistency failure): {0}")]
    WitnessNotFound(String),

    #[error("trace has length {found}, expected {expected}")]
    TraceMismatch { expected: usize, found: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
